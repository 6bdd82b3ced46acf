#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "honeytext/corpus.hpp"
#include "honeytext/embeddings.hpp"
#include "honeytext/errors.hpp"
#include "honeytext/pipeline.hpp"
#include "honeytext/rng.hpp"
#include "honeytext/synsets.hpp"

#include "test_util.hpp"

using namespace honeytext;

namespace {

struct Fixture {
  CategorizedCorpus corpus;
  SynsetGraph graph;
  VectorStore store;

  Fixture() {
    auto stopwords = load_stopwords(data_path("stopwords.txt").string());
    corpus = load_corpus(data_path("corpus_demo.jsonl").string(), stopwords);
    graph = parse_synset_graph(data_path("synsets_sample.tsv").string());
    store = load_vectors(data_path("vectors_demo.txt").string());
  }

  DecoyPipeline pipeline(PipelineConfig config, std::uint64_t seed = 7) const {
    Rng rng(seed);
    return DecoyPipeline(corpus, graph, store, config, rng);
  }
};

std::set<std::string> corpus_token_set(const CategorizedCorpus& corpus) {
  std::set<std::string> tokens;
  for (const auto& doc : corpus.documents) {
    tokens.insert(doc.tokens.begin(), doc.tokens.end());
  }
  return tokens;
}

}  // namespace

TEST_CASE("pipeline trains over every corpus category") {
  Fixture fx;
  auto pipe = fx.pipeline({});
  CHECK(pipe.categories() ==
        std::vector<std::string>{"finance", "sports", "weather"});
  CHECK(pipe.config().top_keywords == 8);
  CHECK(pipe.idf("weather").doc_count == 12);
  CHECK_THROWS_AS(pipe.idf("poetry"), LookupError);
  CHECK(pipe.stopwords().count("the") == 1);
}

TEST_CASE("classify mode routes messages to their topic") {
  Fixture fx;
  auto pipe = fx.pipeline({});
  Rng rng(11);
  auto bag_for = [&](const std::string& text) {
    return preprocess(tokenize(text), pipe.stopwords(), true);
  };
  CHECK(pipe.resolve_category(
            bag_for("the storm brought rain and thunder over the valley"),
            rng) == "weather");
  CHECK(pipe.resolve_category(
            bag_for("the bank moved our credit and the dividend"), rng) ==
        "finance");
  CHECK(pipe.resolve_category(
            bag_for("their captain carried the squad to the trophy"), rng) ==
        "sports");
}

TEST_CASE("fixed random mode sticks to one category") {
  Fixture fx;
  PipelineConfig config;
  config.category_mode = CategoryMode::fixed_random;
  auto pipe = fx.pipeline(config, 3);
  Rng rng(100);
  TokenBag weather_bag = preprocess(
      tokenize("storm rain thunder"), pipe.stopwords(), true);
  TokenBag finance_bag = preprocess(
      tokenize("bank credit dividend"), pipe.stopwords(), true);
  std::string first = pipe.resolve_category(weather_bag, rng);
  CHECK(std::find(pipe.categories().begin(), pipe.categories().end(), first) !=
        pipe.categories().end());
  for (int i = 0; i < 10; ++i) {
    CHECK(pipe.resolve_category(finance_bag, rng) == first);
  }
}

TEST_CASE("per seed random mode varies with the draw") {
  Fixture fx;
  PipelineConfig config;
  config.category_mode = CategoryMode::per_seed_random;
  auto pipe = fx.pipeline(config);
  TokenBag bag;  // ignored by this mode
  Rng rng(5);
  std::set<std::string> seen;
  for (int i = 0; i < 60; ++i) {
    auto category = pipe.resolve_category(bag, rng);
    CHECK(std::find(pipe.categories().begin(), pipe.categories().end(),
                    category) != pipe.categories().end());
    seen.insert(category);
  }
  CHECK(seen.size() >= 2);
}

TEST_CASE("decoys are deterministic under one seed") {
  Fixture fx;
  auto pipe = fx.pipeline({});
  const std::string message =
      "the storm brought rain and thunder over the valley";
  Rng a(42), b(42);
  auto first = pipe.make_decoy(message, a);
  auto second = pipe.make_decoy(message, b);
  CHECK(first == second);
  CHECK(!first.empty());
}

TEST_CASE("decoy tokens come from the training corpus") {
  Fixture fx;
  auto pipe = fx.pipeline({});
  auto vocabulary = corpus_token_set(fx.corpus);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    auto decoy =
        pipe.make_decoy("the bank moved our credit and the dividend", rng);
    REQUIRE(!decoy.empty());
    for (const auto& token : tokenize(decoy)) {
      CHECK(vocabulary.count(token) == 1);
    }
  }
}

TEST_CASE("an all-stopword message still yields a decoy") {
  Fixture fx;
  auto pipe = fx.pipeline({});
  Rng rng(8);
  CHECK(!pipe.make_decoy("the and over our that", rng).empty());
  Rng rng2(8);
  CHECK(!pipe.make_decoy("", rng2).empty());
}

TEST_CASE("epsilon override matches a pipeline built with that epsilon") {
  Fixture fx;
  PipelineConfig loose;
  loose.mechanism.epsilon = 25.0;
  auto pipe_loose = fx.pipeline(loose);

  PipelineConfig base;
  base.mechanism.epsilon = 1.0;
  auto pipe_base = fx.pipeline(base);

  const std::string message = "their captain carried the squad to the trophy";
  Rng a(31), b(31);
  CHECK(pipe_base.make_decoy(message, a, 25.0) ==
        pipe_loose.make_decoy(message, b));
}

TEST_CASE("decoy length follows the plaintext budget") {
  Fixture fx;
  auto pipe = fx.pipeline({});
  const std::string message =
      "the storm brought rain and thunder over the valley and the coast "
      "while the forecast called for sleet hail wind and a cold drizzle";
  std::size_t plain_tokens = tokenize(message).size();
  auto budget = static_cast<std::size_t>(
      std::llround(1.5 * static_cast<double>(plain_tokens)));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    auto decoy = pipe.make_decoy(message, rng);
    CHECK(tokenize(decoy).size() <= budget);
  }
}

TEST_CASE("random tokens come from the embedding vocabulary") {
  Fixture fx;
  auto pipe = fx.pipeline({});
  Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    CHECK(fx.store.contains(pipe.random_token(rng)));
  }
}

TEST_CASE("pipeline training needs at least two categories") {
  Fixture fx;
  CategorizedCorpus tiny;
  tiny.categories = {"solo"};
  Document doc;
  doc.category = "solo";
  doc.doc_id = "d0";
  doc.tokens = tokenize("plain words here");
  doc.bag = preprocess(doc.tokens, {}, false);
  tiny.documents.push_back(doc);
  Rng rng(1);
  CHECK_THROWS_AS(DecoyPipeline(tiny, fx.graph, fx.store, {}, rng),
                  TrainingError);
}
