#include "honeytext/classifier.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include <nlohmann/json.hpp>

#include "honeytext/errors.hpp"

namespace honeytext {

NBModel train_nb(const CategorizedCorpus& corpus, double alpha) {
  if (alpha <= 0.0) throw TrainingError("smoothing alpha must be positive");
  if (corpus.categories.size() < 2) {
    throw TrainingError("training requires at least two categories");
  }

  NBModel model;
  model.alpha = alpha;
  model.categories.assign(corpus.categories.begin(), corpus.categories.end());

  for (const auto& doc : corpus.documents) {
    for (const auto& [token, count] : doc.bag.counts) {
      (void)count;
      model.vocabulary.insert(token);
    }
  }
  if (model.vocabulary.empty()) {
    throw TrainingError("training corpus has an empty vocabulary");
  }

  const double total_docs = static_cast<double>(corpus.documents.size());
  const double vocab_size = static_cast<double>(model.vocabulary.size());

  for (const auto& category : model.categories) {
    TokenBag merged = corpus.category_bag(category);
    const double doc_count =
        static_cast<double>(corpus.documents_in(category).size());
    model.log_priors[category] = std::log(doc_count / total_docs);

    const double denom =
        static_cast<double>(merged.total) + alpha * vocab_size;
    model.log_unseen[category] = std::log(alpha / denom);
    auto& table = model.log_likelihoods[category];
    for (const auto& [token, count] : merged.counts) {
      table[token] = std::log((static_cast<double>(count) + alpha) / denom);
    }
  }
  return model;
}

double log_posterior(const NBModel& model, const TokenBag& bag,
                     const std::string& category) {
  auto prior_it = model.log_priors.find(category);
  if (prior_it == model.log_priors.end()) {
    throw LookupError("unknown category: " + category);
  }
  double score = prior_it->second;
  const auto& table = model.log_likelihoods.at(category);
  const double unseen = model.log_unseen.at(category);
  for (const auto& [token, count] : bag.counts) {
    if (!model.in_vocabulary(token)) continue;
    auto it = table.find(token);
    const double ll = (it == table.end()) ? unseen : it->second;
    score += static_cast<double>(count) * ll;
  }
  return score;
}

std::map<std::string, double> log_posteriors(const NBModel& model,
                                             const TokenBag& bag) {
  std::map<std::string, double> scores;
  for (const auto& category : model.categories) {
    scores[category] = log_posterior(model, bag, category);
  }
  return scores;
}

std::string classify(const NBModel& model, const TokenBag& bag) {
  if (model.categories.empty()) throw LookupError("model has no categories");
  std::string best;
  double best_score = -std::numeric_limits<double>::infinity();
  for (const auto& category : model.categories) {  // sorted: ties keep first
    double score = log_posterior(model, bag, category);
    if (score > best_score) {
      best_score = score;
      best = category;
    }
  }
  return best;
}

void save_nb(const NBModel& model, const std::string& path) {
  nlohmann::json doc;
  doc["alpha"] = model.alpha;
  doc["categories"] = model.categories;
  doc["vocabulary"] = model.vocabulary;
  doc["log_priors"] = model.log_priors;
  doc["log_likelihoods"] = model.log_likelihoods;
  doc["log_unseen"] = model.log_unseen;
  std::ofstream out(path);
  if (!out) throw ResourceError("cannot write model file: " + path);
  out << doc.dump(2) << '\n';
  if (!out) throw ResourceError("failed writing model file: " + path);
}

NBModel load_nb(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open model file: " + path);
  nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw ParseError("model file is not valid JSON");
  NBModel model;
  try {
    model.alpha = doc.at("alpha").get<double>();
    model.categories = doc.at("categories").get<std::vector<std::string>>();
    model.vocabulary = doc.at("vocabulary").get<std::set<std::string>>();
    model.log_priors =
        doc.at("log_priors").get<std::map<std::string, double>>();
    model.log_likelihoods =
        doc.at("log_likelihoods")
            .get<std::map<std::string, std::map<std::string, double>>>();
    model.log_unseen =
        doc.at("log_unseen").get<std::map<std::string, double>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model file malformed: ") + e.what());
  }
  return model;
}

}  // namespace honeytext
