#include "honeytext/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "honeytext/errors.hpp"

namespace honeytext {

DecoyPipeline::DecoyPipeline(const CategorizedCorpus& corpus,
                             const SynsetGraph& graph,
                             const VectorStore& store, PipelineConfig config,
                             Rng& rng)
    : cfg_(std::move(config)),
      graph_(&graph),
      store_(&store),
      stopwords_(corpus.stopwords),
      categories_(corpus.categories.begin(), corpus.categories.end()) {
  if (categories_.empty()) {
    throw TrainingError("pipeline needs a corpus with categories");
  }
  nb_ = train_nb(corpus);
  for (const auto& category : categories_) {
    idf_.emplace(category, build_idf(corpus.bags_in(category)));
    ngrams_.emplace(category, train_ngram(corpus, category, cfg_.ngram_order));
  }
  if (cfg_.category_mode == CategoryMode::fixed_random) {
    fixed_category_ = categories_[static_cast<std::size_t>(
        rng.uniform_index(categories_.size()))];
  }
}

std::string DecoyPipeline::resolve_category(const TokenBag& bag,
                                            Rng& rng) const {
  switch (cfg_.category_mode) {
    case CategoryMode::classify:
      return classify(nb_, bag);
    case CategoryMode::fixed_random:
      return fixed_category_;
    case CategoryMode::per_seed_random:
      return categories_[static_cast<std::size_t>(
          rng.uniform_index(categories_.size()))];
  }
  throw InputError("unknown category mode");
}

std::string DecoyPipeline::make_decoy(const std::string& message, Rng& rng,
                                      std::optional<double> epsilon_override) const {
  std::vector<std::string> tokens = tokenize(message);
  TokenBag bag = preprocess(tokens, stopwords_, true);

  std::string category = resolve_category(bag, rng);

  // A message that preprocessing empties (all stopwords) still gets a
  // decoy; it just cannot steer the generator.
  std::vector<Keyword> keywords;
  if (!bag.empty()) {
    keywords = extract_keywords(bag, idf_.at(category), cfg_.top_keywords);
  }
  std::vector<std::string> swapped = perturb_keywords(
      *graph_, keywords, cfg_.p_halt, cfg_.per_keyword, rng);

  MechanismConfig mechanism = cfg_.mechanism;
  if (epsilon_override) mechanism.epsilon = *epsilon_override;
  std::vector<std::string> privatized =
      privatize_bag(*store_, swapped, mechanism, rng);

  std::size_t budget = std::max(
      cfg_.min_tokens,
      static_cast<std::size_t>(std::llround(
          cfg_.max_tokens_factor * static_cast<double>(tokens.size()))));
  return generate_decoy(ngrams_.at(category), privatized, budget,
                        cfg_.keyword_boost, rng);
}

const IdfTable& DecoyPipeline::idf(const std::string& category) const {
  auto it = idf_.find(category);
  if (it == idf_.end()) throw LookupError("unknown category: " + category);
  return it->second;
}

std::string DecoyPipeline::random_token(Rng& rng) const {
  std::size_t pick =
      static_cast<std::size_t>(rng.uniform_index(store_->size()));
  auto it = store_->vectors.begin();
  std::advance(it, static_cast<long>(pick));
  return it->first;
}

}  // namespace honeytext
