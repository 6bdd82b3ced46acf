#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "honeytext/corpus.hpp"
#include "honeytext/rng.hpp"

namespace honeytext {

// Markov chain over raw token sequences (function words kept, since the
// output should read like prose, not like a keyword bag).
struct NgramModel {
  int order = 2;  // context length is order - 1
  std::string category;
  std::map<std::vector<std::string>, std::map<std::string, long>> transitions;
  std::vector<std::vector<std::string>> sentence_starts;

  bool vocabulary_contains(const std::string& token) const;
};

// Counts order-grams over every document of the category; start contexts
// are the opening tokens of each document. order must be in [2, 4].
NgramModel train_ngram(const CategorizedCorpus& corpus,
                       const std::string& category, int order);

// Seeded sampling: the walk starts from a context containing one of the
// keywords when any exists in the model, successor weights are multiplied
// by keyword_boost for keyword candidates, and the walk stops at
// max_tokens or at a context with no successors.
std::string generate_decoy(const NgramModel& model,
                           const std::vector<std::string>& keywords,
                           std::size_t max_tokens, double keyword_boost,
                           Rng& rng);

struct GeneratorSpec {
  enum class Kind { ngram, external };
  Kind kind = Kind::ngram;
  std::string external_command;  // required iff kind == external
  std::size_t max_tokens = 100;
  double keyword_boost = 5.0;
};

// Runs external_command through the shell, writes one JSON line
// {"keywords":[...],"category":"...","max_tokens":N} to its stdin, and
// returns its stdout trimmed to max_tokens whitespace-separated tokens.
// Nonzero exit or empty output raises a generator error carrying the
// child's stderr.
std::string generate_via_external(const GeneratorSpec& spec,
                                  const std::vector<std::string>& keywords,
                                  const std::string& category);

}  // namespace honeytext
