#pragma once

#include <map>
#include <set>
#include <string>

#include "honeytext/corpus.hpp"

namespace honeytext {

// Multinomial naive Bayes over token bags. Likelihoods are Laplace
// smoothed across the shared vocabulary, so no token in the vocabulary
// ever has zero probability. Tokens outside the vocabulary are ignored
// when scoring.
struct NBModel {
  double alpha = 1.0;
  std::vector<std::string> categories;  // sorted
  std::set<std::string> vocabulary;
  std::map<std::string, double> log_priors;
  // Log likelihood per category for tokens seen in that category's bag;
  // vocabulary tokens unseen in the category fall back to log_unseen.
  std::map<std::string, std::map<std::string, double>> log_likelihoods;
  std::map<std::string, double> log_unseen;

  bool in_vocabulary(const std::string& token) const {
    return vocabulary.count(token) != 0;
  }
};

NBModel train_nb(const CategorizedCorpus& corpus, double alpha = 1.0);

// log P(category) + sum over bag tokens of count * log P(token|category).
// Unknown category throws LookupError.
double log_posterior(const NBModel& model, const TokenBag& bag,
                     const std::string& category);

std::map<std::string, double> log_posteriors(const NBModel& model,
                                             const TokenBag& bag);

// MAP category; ties resolve to the lexicographically smallest name.
std::string classify(const NBModel& model, const TokenBag& bag);

void save_nb(const NBModel& model, const std::string& path);
NBModel load_nb(const std::string& path);

}  // namespace honeytext
