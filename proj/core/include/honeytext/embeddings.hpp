#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "honeytext/rng.hpp"

namespace honeytext {

// Word vectors with a unit-normalized copy cached per word. The privacy
// metric between words is the Euclidean distance of the normalized
// vectors, a true metric that orders word pairs exactly like cosine.
struct VectorStore {
  std::size_t dim = 0;
  std::map<std::string, std::vector<double>> vectors;
  std::map<std::string, std::vector<double>> normalized;

  // Load diagnostics (non-fatal).
  std::size_t declared_count = 0;
  std::size_t duplicate_count = 0;
  bool count_mismatch = false;

  bool contains(const std::string& word) const {
    return vectors.count(word) != 0;
  }
  const std::vector<double>& unit(const std::string& word) const;
  std::size_t size() const { return vectors.size(); }
};

// Text format: header `count dim`, then `word v1 ... v_dim` per line.
// Duplicate words keep the last definition (counted); a header count that
// disagrees with the actual number of lines is flagged, actual count wins.
VectorStore load_vectors(const std::string& path);

double similarity(const VectorStore& store, const std::string& w1,
                  const std::string& w2);

// Euclidean distance between unit-normalized vectors: sqrt(2 - 2 cos).
double embedding_distance(const VectorStore& store, const std::string& w1,
                          const std::string& w2);

struct Neighbor {
  std::string token;
  double similarity = 0.0;
};

// Exhaustive top-k by cosine to `query`, ties broken by token; `exclude`
// is filtered out. Zero query has no direction and is rejected.
std::vector<Neighbor> nearest_neighbors(const VectorStore& store,
                                        const std::vector<double>& query,
                                        std::size_t k,
                                        const std::set<std::string>& exclude);

enum class MechanismMode { continuous_laplace, discrete_exponential };

struct MechanismConfig {
  double epsilon = 1.0;
  MechanismMode mode = MechanismMode::discrete_exponential;
};

// Exact output distribution of the discrete mechanism:
// P(w -> z) proportional to exp(-epsilon * d(w, z)).
std::map<std::string, double> discrete_distribution(const VectorStore& store,
                                                    const std::string& word,
                                                    double epsilon);

// One private substitution. Discrete mode samples the distribution above;
// continuous mode adds noise with density proportional to exp(-epsilon|z|)
// (uniform direction, Gamma(dim, 1/epsilon) radius) to the normalized
// vector and snaps to the nearest vocabulary word.
std::string privatize_word(const VectorStore& store, const std::string& word,
                           const MechanismConfig& cfg, Rng& rng);

// Element-wise independent privatize_word, order preserved. Tokens outside
// the vocabulary pass through; their number is reported via oov_count.
std::vector<std::string> privatize_bag(const VectorStore& store,
                                       const std::vector<std::string>& bag,
                                       const MechanismConfig& cfg, Rng& rng,
                                       std::size_t* oov_count = nullptr);

}  // namespace honeytext
