#include <doctest.h>

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "honeytext/embeddings.hpp"
#include "honeytext/errors.hpp"
#include "honeytext/rng.hpp"

#include "test_util.hpp"

using namespace honeytext;

namespace {

VectorStore store_from(const std::string& text) {
  TempDir tmp;
  write_file(tmp.file("v.txt"), text);
  return load_vectors(tmp.file("v.txt").string());
}

// Four directions in the plane with hand-checkable cosines.
VectorStore plane_store() {
  return store_from(
      "4 2\n"
      "east 1 0\n"
      "diag 1 1\n"
      "north 0 1\n"
      "west -1 0\n");
}

// Two unit words at distance exactly 1 (cosine 0.5).
VectorStore pair_store() {
  return store_from(
      "2 2\n"
      "aa 1 0\n"
      "bb 0.5 0.8660254037844386\n");
}

}  // namespace

TEST_CASE("vector files load with dimension checks") {
  VectorStore store = store_from("2 3\nfoo 1 0 0\nbar 0 2 0\n");
  CHECK(store.size() == 2);
  CHECK(store.dim == 3);
  CHECK_FALSE(store.count_mismatch);
  CHECK(store.duplicate_count == 0);
  CHECK(store.vectors.at("bar") == std::vector<double>{0.0, 2.0, 0.0});
  CHECK(store.unit("bar") == std::vector<double>{0.0, 1.0, 0.0});
}

TEST_CASE("load failures carry their line numbers") {
  try {
    store_from("2 3\nfoo 1 0 0\nbar 0 2\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    std::string what = e.what();
    CHECK(what.find("bar") != std::string::npos);
    CHECK(what.find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(store_from(""), ParseError);              // no header
  CHECK_THROWS_AS(store_from("x 3\nfoo 1 0 0\n"), ParseError);
  CHECK_THROWS_AS(store_from("1 3 9\nfoo 1 0 0\n"), ParseError);
  CHECK_THROWS_AS(store_from("1 0\nfoo\n"), ParseError);
  CHECK_THROWS_AS(store_from("1 2\nfoo 1 huh\n"), ParseError);
  CHECK_THROWS_AS(store_from("1 2\nfoo 0 0\n"), ParseError);  // zero vector
  CHECK_THROWS_AS(store_from("0 2\n"), ParseError);           // empty store
}

TEST_CASE("header miscounts and duplicates are tolerated with diagnostics") {
  VectorStore store = store_from("5 2\nfoo 1 0\nbar 0 1\n");
  CHECK(store.count_mismatch);
  CHECK(store.declared_count == 5);
  CHECK(store.size() == 2);

  VectorStore dup = store_from("3 2\nfoo 1 0\nfoo 0 1\nbar 1 1\n");
  CHECK(dup.duplicate_count == 1);
  CHECK(dup.size() == 2);
  CHECK(dup.vectors.at("foo") == std::vector<double>{0.0, 1.0});  // last wins
}

TEST_CASE("similarity is the cosine with exact self-similarity") {
  VectorStore store = plane_store();
  CHECK(similarity(store, "east", "east") == 1.0);
  CHECK(similarity(store, "east", "north") == doctest::Approx(0.0));
  CHECK(similarity(store, "east", "diag") ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(similarity(store, "east", "west") == doctest::Approx(-1.0));
  CHECK(similarity(store, "diag", "east") ==
        similarity(store, "east", "diag"));
  CHECK_THROWS_AS(similarity(store, "east", "ghost"), LookupError);
  CHECK_THROWS_AS(similarity(store, "ghost", "ghost"), LookupError);
}

TEST_CASE("embedding distance is sqrt(2 - 2 cos)") {
  VectorStore store = pair_store();
  CHECK(embedding_distance(store, "aa", "aa") == 0.0);
  CHECK(embedding_distance(store, "aa", "bb") ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("nearest neighbors rank the whole vocabulary by hand-checked order") {
  VectorStore store = plane_store();
  auto ranked = nearest_neighbors(store, {1.0, 0.0}, 10, {});
  REQUIRE(ranked.size() == 4);
  CHECK(ranked[0].token == "east");
  CHECK(ranked[0].similarity == doctest::Approx(1.0));
  CHECK(ranked[1].token == "diag");
  CHECK(ranked[2].token == "north");
  CHECK(ranked[3].token == "west");

  auto top = nearest_neighbors(store, {1.0, 0.0}, 2, {});
  REQUIRE(top.size() == 2);
  CHECK(top[0].token == "east");

  auto excluded = nearest_neighbors(store, {1.0, 0.0}, 2, {"east"});
  CHECK(excluded[0].token == "diag");

  CHECK_THROWS_AS(nearest_neighbors(store, {0.0, 0.0}, 2, {}), InputError);
  CHECK_THROWS_AS(nearest_neighbors(store, {1.0}, 2, {}), InputError);
  CHECK_THROWS_AS(nearest_neighbors(store, {1.0, 0.0}, 0, {}), InputError);
}

TEST_CASE("equal similarities rank lexicographically") {
  VectorStore store = store_from("3 2\nzz 1 0\ncc 0 1\nbb 0 1\n");
  auto ranked = nearest_neighbors(store, {0.0, 1.0}, 3, {});
  CHECK(ranked[0].token == "bb");
  CHECK(ranked[1].token == "cc");
  CHECK(ranked[2].token == "zz");
}

TEST_CASE("neighbor order is consistent with pairwise similarity") {
  VectorStore store = plane_store();
  auto ranked = nearest_neighbors(store, store.vectors.at("diag"),
                                  store.size(), {});
  for (std::size_t i = 1; i < ranked.size(); ++i) {
    CHECK(similarity(store, "diag", ranked[i - 1].token) >=
          similarity(store, "diag", ranked[i].token));
  }
}

TEST_CASE("the two-word closed form gives P(stay) = 0.8 at epsilon ln 4") {
  VectorStore store = pair_store();
  auto dist = discrete_distribution(store, "aa", std::log(4.0));
  CHECK(dist.at("aa") == doctest::Approx(0.8).epsilon(1e-9));
  CHECK(dist.at("bb") == doctest::Approx(0.2).epsilon(1e-9));
}

TEST_CASE("exact discrete distributions sum to one") {
  VectorStore store =
      load_vectors(data_path("vectors_privacy.txt").string());
  for (const auto& [word, vec] : store.vectors) {
    (void)vec;
    for (double epsilon : {0.5, 1.0, 2.0}) {
      auto dist = discrete_distribution(store, word, epsilon);
      double sum = 0.0;
      for (const auto& [candidate, p] : dist) {
        (void)candidate;
        CHECK(p > 0.0);
        sum += p;
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("every output ratio respects e^{epsilon d} on the six-word store") {
  VectorStore store =
      load_vectors(data_path("vectors_privacy.txt").string());
  double epsilon = 1.3;
  std::map<std::string, std::map<std::string, double>> dists;
  for (const auto& [word, vec] : store.vectors) {
    (void)vec;
    dists[word] = discrete_distribution(store, word, epsilon);
  }
  for (const auto& [w1, d1] : dists) {
    for (const auto& [w2, d2] : dists) {
      double bound =
          std::exp(epsilon * embedding_distance(store, w1, w2)) *
          (1.0 + 1e-9);
      for (const auto& [z, p1] : d1) {
        CHECK(p1 / d2.at(z) <= bound);
      }
    }
  }
}

TEST_CASE("staying probability grows with epsilon") {
  VectorStore store = plane_store();
  double previous = 0.0;
  for (double epsilon : {0.1, 1.0, 10.0}) {
    double stay = discrete_distribution(store, "east", epsilon).at("east");
    CHECK(stay >= previous);
    previous = stay;
  }
}

TEST_CASE("an enormous epsilon almost never moves a word") {
  VectorStore store = plane_store();
  MechanismConfig cfg{1e6, MechanismMode::discrete_exponential};
  Rng rng(17);
  int stayed = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    if (privatize_word(store, "north", cfg, rng) == "north") ++stayed;
  }
  CHECK(stayed >= 9990);
}

TEST_CASE("discrete sampling frequencies track the exact distribution") {
  VectorStore store = pair_store();
  MechanismConfig cfg{std::log(4.0), MechanismMode::discrete_exponential};
  Rng rng(5150);
  int stayed = 0;
  const int trials = 10000;
  for (int trial = 0; trial < trials; ++trial) {
    if (privatize_word(store, "aa", cfg, rng) == "aa") ++stayed;
  }
  // 3 sigma of Binomial(10000, 0.8) is 120.
  CHECK(std::abs(stayed - 8000) <= 120);
}

TEST_CASE("the continuous mechanism is seed-deterministic and in-vocabulary") {
  VectorStore store = plane_store();
  MechanismConfig cfg{2.0, MechanismMode::continuous_laplace};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng_a(seed);
    Rng rng_b(seed);
    std::string a = privatize_word(store, "diag", cfg, rng_a);
    CHECK(a == privatize_word(store, "diag", cfg, rng_b));
    CHECK(store.contains(a));
  }
}

TEST_CASE("a huge epsilon keeps the continuous mechanism at home too") {
  VectorStore store = plane_store();
  MechanismConfig cfg{1e9, MechanismMode::continuous_laplace};
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    CHECK(privatize_word(store, "east", cfg, rng) == "east");
  }
}

TEST_CASE("mechanism inputs are validated") {
  VectorStore store = plane_store();
  Rng rng(1);
  MechanismConfig discrete{1.0, MechanismMode::discrete_exponential};
  CHECK_THROWS_AS(privatize_word(store, "ghost", discrete, rng), LookupError);
  MechanismConfig bad{0.0, MechanismMode::discrete_exponential};
  CHECK_THROWS_AS(privatize_word(store, "east", bad, rng), InputError);
  CHECK_THROWS_AS(discrete_distribution(store, "east", -1.0), InputError);
}

TEST_CASE("bag privatization is element-wise and order preserving") {
  VectorStore store = pair_store();
  MechanismConfig cfg{std::log(4.0), MechanismMode::discrete_exponential};

  Rng empty_rng(0);
  CHECK(privatize_bag(store, {}, cfg, empty_rng).empty());

  // A one-word bag consumes the stream exactly like privatize_word.
  Rng bag_rng(88);
  Rng word_rng(88);
  auto bag_out = privatize_bag(store, {"aa"}, cfg, bag_rng);
  REQUIRE(bag_out.size() == 1);
  CHECK(bag_out[0] == privatize_word(store, "aa", cfg, word_rng));

  std::size_t oov = 0;
  Rng oov_rng(12);
  auto mixed = privatize_bag(store, {"aa", "martian", "bb"}, cfg, oov_rng,
                             &oov);
  REQUIRE(mixed.size() == 3);
  CHECK(mixed[1] == "martian");  // out-of-vocabulary passes through
  CHECK(oov == 1);
  CHECK(store.contains(mixed[0]));
  CHECK(store.contains(mixed[2]));
}

TEST_CASE("pair outcomes follow the product of single-word laws") {
  VectorStore store = pair_store();
  MechanismConfig cfg{std::log(4.0), MechanismMode::discrete_exponential};
  auto single = discrete_distribution(store, "aa", cfg.epsilon);

  std::map<std::pair<std::string, std::string>, double> expected;
  for (const auto& [z1, p1] : single) {
    for (const auto& [z2, p2] : single) {
      expected[{z1, z2}] = p1 * p2;
    }
  }

  Rng rng(4242);
  std::map<std::pair<std::string, std::string>, int> observed;
  const int trials = 50000;
  for (int trial = 0; trial < trials; ++trial) {
    auto out = privatize_bag(store, {"aa", "aa"}, cfg, rng);
    observed[{out[0], out[1]}]++;
  }
  double l1 = 0.0;
  for (const auto& [outcome, p] : expected) {
    auto it = observed.find(outcome);
    double freq = it == observed.end()
                      ? 0.0
                      : static_cast<double>(it->second) / trials;
    l1 += std::abs(freq - p);
  }
  CHECK(l1 < 0.02);
}

TEST_CASE("the shipped demo vectors are unit-cached and well-formed") {
  VectorStore store = load_vectors(data_path("vectors_demo.txt").string());
  CHECK(store.dim == 8);
  CHECK_FALSE(store.count_mismatch);
  for (const auto& [word, unit] : store.normalized) {
    (void)word;
    double norm2 = 0.0;
    for (double c : unit) norm2 += c * c;
    CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-9));
  }
}
