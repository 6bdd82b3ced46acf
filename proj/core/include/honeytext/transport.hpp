#pragma once

#include <functional>
#include <string>
#include <vector>

namespace honeytext {

// Discrete distribution over tokens; weights sum to 1.
struct WeightedBag {
  std::vector<std::string> items;
  std::vector<double> weights;

  static WeightedBag uniform(std::vector<std::string> items);
};

using Metric =
    std::function<double(const std::string&, const std::string&)>;

struct TransportPlan {
  std::vector<std::vector<double>> flow;  // |x| rows, |y| columns
  double cost = 0.0;
};

// Exact earth mover's distance: minimize sum d(x_i, y_j) * F_ij subject to
// the marginal constraints. Equal-size uniform bags are solved as an
// assignment problem, so the optimal plan has entries in {0, 1/N}; other
// bags go through the transportation simplex. Exact vertex solutions, no
// entropic approximation.
TransportPlan emd(const WeightedBag& x, const WeightedBag& y,
                  const Metric& metric);

// (1/N) * min over permutations of sum d(m_i, m'_sigma(i)). Brute force by
// permutation enumeration, so it doubles as an independent oracle for emd
// on uniform bags; rejects N > 10.
double flatten_distance(const std::vector<std::string>& m,
                        const std::vector<std::string>& m_prime,
                        const Metric& metric);

}  // namespace honeytext
