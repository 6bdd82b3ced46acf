#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "honeytext/corpus.hpp"

namespace honeytext {

// Inverse document frequencies learned from a corpus. Tokens that appear
// in no document score ln(doc_count) + 1, above every seen token.
struct IdfTable {
  std::size_t doc_count = 0;
  std::map<std::string, double> values;

  double lookup(const std::string& token) const;
};

double tf(const TokenBag& bag, const std::string& token);

// Document-frequency table over the given bags, idf = ln(N / n).
IdfTable build_idf(const std::vector<TokenBag>& docs);

// Convenience: idf over every document of the corpus.
IdfTable build_idf(const CategorizedCorpus& corpus);

struct Keyword {
  std::string token;
  double score = 0.0;

  bool operator==(const Keyword&) const = default;
};

// Top-k tokens of the bag by tf-idf, descending score, ties broken by
// ascending token. Returns fewer than k when the bag is small.
std::vector<Keyword> extract_keywords(const TokenBag& bag,
                                      const IdfTable& idf, std::size_t k);

}  // namespace honeytext
