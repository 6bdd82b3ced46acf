#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "honeytext/classifier.hpp"
#include "honeytext/corpus.hpp"
#include "honeytext/embeddings.hpp"
#include "honeytext/generator.hpp"
#include "honeytext/keywords.hpp"
#include "honeytext/synsets.hpp"

namespace honeytext {

// How decoys pick their topic: classify the plaintext and stay in its
// category, fix one random category for every decoy, or draw a fresh
// random category per decoy.
enum class CategoryMode { classify, fixed_random, per_seed_random };

struct PipelineConfig {
  CategoryMode category_mode = CategoryMode::classify;
  std::size_t top_keywords = 8;
  double p_halt = 0.5;
  std::size_t per_keyword = 2;
  MechanismConfig mechanism;
  int ngram_order = 2;
  double keyword_boost = 5.0;
  // Decoy length budget: factor times the plaintext token count, so decoys
  // are length-plausible; at least min_tokens either way.
  double max_tokens_factor = 1.5;
  std::size_t min_tokens = 8;
};

// End-to-end decoy synthesis: classify (or pick) a category, extract
// keywords, swap them through the synset graph, privatize the survivors
// in embedding space, and run the category's n-gram generator seeded with
// the final keywords.
class DecoyPipeline {
 public:
  // Trains the classifier and, per category, an idf table and an n-gram
  // model. The rng picks the category for fixed_random mode.
  DecoyPipeline(const CategorizedCorpus& corpus, const SynsetGraph& graph,
                const VectorStore& store, PipelineConfig config, Rng& rng);

  std::string resolve_category(const TokenBag& bag, Rng& rng) const;
  std::string make_decoy(const std::string& message, Rng& rng,
                         std::optional<double> epsilon_override = {}) const;

  // A uniformly random embedding-vocabulary token; used to nudge a decoy
  // away from an accidental textual collision with the plaintext.
  std::string random_token(Rng& rng) const;

  const NBModel& classifier() const { return nb_; }
  const IdfTable& idf(const std::string& category) const;
  const PipelineConfig& config() const { return cfg_; }
  const std::set<std::string>& stopwords() const { return stopwords_; }
  const std::vector<std::string>& categories() const { return categories_; }

 private:
  PipelineConfig cfg_;
  const SynsetGraph* graph_;
  const VectorStore* store_;
  std::set<std::string> stopwords_;
  std::vector<std::string> categories_;
  NBModel nb_;
  std::map<std::string, IdfTable> idf_;  // keyed by category
  std::map<std::string, NgramModel> ngrams_;
  std::string fixed_category_;
};

}  // namespace honeytext
