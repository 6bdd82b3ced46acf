#include "honeytext/privacy.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

#include "honeytext/errors.hpp"
#include "honeytext/transport.hpp"

namespace honeytext {

namespace {

constexpr double kEnumerationBudget = 1e6;

}  // namespace

PrivacyReport verify_privacy_bound(const VectorStore& store,
                                   const MechanismConfig& cfg,
                                   const std::vector<std::string>& m,
                                   const std::vector<std::string>& m_prime) {
  if (cfg.mode != MechanismMode::discrete_exponential) {
    throw InputError(
        "bound verification needs the discrete mechanism; the continuous "
        "mechanism has no closed-form output distribution after snapping");
  }
  if (m.empty() || m.size() != m_prime.size()) {
    throw InputError("message bags must be non-empty and of equal size");
  }
  const std::size_t n = m.size();
  double sequences = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    sequences *= static_cast<double>(store.size());
    if (sequences > kEnumerationBudget) {
      throw ResourceError("output enumeration exceeds the 1e6 budget");
    }
  }

  std::vector<std::string> vocabulary;
  vocabulary.reserve(store.size());
  for (const auto& [word, vec] : store.vectors) {
    (void)vec;
    vocabulary.push_back(word);
  }

  // Per-slot substitution distributions for both bags.
  std::vector<std::map<std::string, double>> dist_m, dist_mp;
  for (std::size_t i = 0; i < n; ++i) {
    dist_m.push_back(discrete_distribution(store, m[i], cfg.epsilon));
    dist_mp.push_back(discrete_distribution(store, m_prime[i], cfg.epsilon));
  }

  // Walk every output sequence; fold sequences into multisets by sorting.
  // Each arrangement of a multiset contributes its slot-product once, so
  // the folded totals are exact multiset probabilities.
  std::map<std::vector<std::string>, std::pair<double, double>> outputs;
  std::vector<std::size_t> odometer(n, 0);
  std::vector<std::string> sequence(n);
  for (;;) {
    double p = 1.0, q = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      sequence[i] = vocabulary[odometer[i]];
      p *= dist_m[i].at(sequence[i]);
      q *= dist_mp[i].at(sequence[i]);
    }
    std::vector<std::string> key = sequence;
    std::sort(key.begin(), key.end());
    auto& cell = outputs[key];
    cell.first += p;
    cell.second += q;

    std::size_t slot = 0;
    while (slot < n && ++odometer[slot] == vocabulary.size()) {
      odometer[slot] = 0;
      ++slot;
    }
    if (slot == n) break;
  }

  PrivacyReport report;
  report.epsilon = cfg.epsilon;
  report.bag_size = n;
  report.max_ratio = 0.0;
  for (const auto& [key, pq] : outputs) {
    (void)key;
    report.max_ratio = std::max(report.max_ratio, pq.first / pq.second);
  }

  Metric metric = [&store](const std::string& a, const std::string& b) {
    return embedding_distance(store, a, b);
  };
  report.emd_value =
      emd(WeightedBag::uniform(m), WeightedBag::uniform(m_prime), metric).cost;
  report.bound =
      std::exp(cfg.epsilon * static_cast<double>(n) * report.emd_value);
  report.holds = report.max_ratio <= report.bound * (1.0 + 1e-9);
  return report;
}

std::string to_json(const PrivacyReport& report) {
  nlohmann::json doc;
  doc["epsilon"] = report.epsilon;
  doc["bag_size"] = report.bag_size;
  doc["emd"] = report.emd_value;
  doc["max_ratio"] = report.max_ratio;
  doc["bound"] = report.bound;
  doc["holds"] = report.holds;
  return doc.dump(2);
}

}  // namespace honeytext
