#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "honeytext/embeddings.hpp"

namespace honeytext {

struct PrivacyReport {
  double epsilon = 0.0;
  std::size_t bag_size = 0;
  double emd_value = 0.0;   // E_d between the two bags
  double max_ratio = 0.0;   // worst output-probability ratio, exact
  double bound = 0.0;       // e^{epsilon * N * emd_value}
  bool holds = false;       // max_ratio <= bound * (1 + 1e-9)
};

// Exact check that the bag mechanism (privatize_bag in discrete mode)
// keeps every output multiset's probability ratio within
// e^{epsilon * N * E_d(m, m')}. Enumerates all |V|^N outputs, so the
// vocabulary and bag must satisfy |V|^N <= 1e6.
PrivacyReport verify_privacy_bound(const VectorStore& store,
                                   const MechanismConfig& cfg,
                                   const std::vector<std::string>& m,
                                   const std::vector<std::string>& m_prime);

std::string to_json(const PrivacyReport& report);

}  // namespace honeytext
