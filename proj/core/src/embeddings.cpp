#include "honeytext/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "honeytext/errors.hpp"

namespace honeytext {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double norm(const std::vector<double>& v) { return std::sqrt(dot(v, v)); }

}  // namespace

const std::vector<double>& VectorStore::unit(const std::string& word) const {
  auto it = normalized.find(word);
  if (it == normalized.end()) {
    throw LookupError("unknown word: " + word);
  }
  return it->second;
}

VectorStore load_vectors(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open vector file: " + path);

  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing header line", 1);
  VectorStore store;
  {
    std::istringstream header(line);
    long long count = 0, dim = 0;
    if (!(header >> count >> dim) || count < 0 || dim <= 0) {
      throw ParseError("header must be `count dim` with dim > 0", 1);
    }
    std::string extra;
    if (header >> extra) throw ParseError("trailing data in header", 1);
    store.declared_count = static_cast<std::size_t>(count);
    store.dim = static_cast<std::size_t>(dim);
  }

  std::size_t line_no = 1;
  std::size_t data_lines = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    ++data_lines;
    std::istringstream row(line);
    std::string word;
    if (!(row >> word)) throw ParseError("missing word", line_no);
    std::vector<double> vec;
    vec.reserve(store.dim);
    double component = 0.0;
    while (row >> component) vec.push_back(component);
    if (!row.eof()) {
      throw ParseError("non-numeric vector component for '" + word + "'",
                       line_no);
    }
    if (vec.size() != store.dim) {
      throw ParseError("expected " + std::to_string(store.dim) +
                           " components for '" + word + "', got " +
                           std::to_string(vec.size()),
                       line_no);
    }
    double n = norm(vec);
    if (n < 1e-12) {
      throw ParseError("zero vector for '" + word + "' cannot be normalized",
                       line_no);
    }
    if (store.vectors.count(word)) ++store.duplicate_count;
    std::vector<double> unit(vec.size());
    for (std::size_t i = 0; i < vec.size(); ++i) unit[i] = vec[i] / n;
    store.vectors[word] = std::move(vec);
    store.normalized[word] = std::move(unit);
  }
  if (store.vectors.empty()) {
    throw ParseError("vector file has no entries", line_no);
  }
  store.count_mismatch = (data_lines != store.declared_count);
  return store;
}

double similarity(const VectorStore& store, const std::string& w1,
                  const std::string& w2) {
  if (w1 == w2) {
    (void)store.unit(w1);  // still validate membership
    return 1.0;
  }
  return dot(store.unit(w1), store.unit(w2));
}

double embedding_distance(const VectorStore& store, const std::string& w1,
                          const std::string& w2) {
  if (w1 == w2) {
    (void)store.unit(w1);
    return 0.0;
  }
  double cos = dot(store.unit(w1), store.unit(w2));
  double squared = 2.0 - 2.0 * cos;
  return squared <= 0.0 ? 0.0 : std::sqrt(squared);
}

std::vector<Neighbor> nearest_neighbors(const VectorStore& store,
                                        const std::vector<double>& query,
                                        std::size_t k,
                                        const std::set<std::string>& exclude) {
  if (k == 0) throw InputError("k must be at least 1");
  if (query.size() != store.dim) {
    throw InputError("query dimension " + std::to_string(query.size()) +
                     " does not match store dimension " +
                     std::to_string(store.dim));
  }
  double qn = norm(query);
  if (qn < 1e-12) {
    throw InputError("zero query vector has no direction");
  }
  std::vector<Neighbor> ranked;
  ranked.reserve(store.size());
  for (const auto& [word, unit] : store.normalized) {
    if (exclude.count(word)) continue;
    ranked.push_back({word, dot(query, unit) / qn});
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const Neighbor& a, const Neighbor& b) {
              if (a.similarity != b.similarity) {
                return a.similarity > b.similarity;
              }
              return a.token < b.token;
            });
  if (ranked.size() > k) ranked.resize(k);
  return ranked;
}

std::map<std::string, double> discrete_distribution(const VectorStore& store,
                                                    const std::string& word,
                                                    double epsilon) {
  if (epsilon <= 0.0) throw InputError("epsilon must be positive");
  (void)store.unit(word);
  std::map<std::string, double> dist;
  double total = 0.0;
  for (const auto& [candidate, unit] : store.normalized) {
    (void)unit;
    double weight = std::exp(-epsilon * embedding_distance(store, word, candidate));
    dist[candidate] = weight;
    total += weight;
  }
  for (auto& [candidate, weight] : dist) {
    (void)candidate;
    weight /= total;
  }
  return dist;
}

namespace {

std::string sample_discrete(const VectorStore& store, const std::string& word,
                            double epsilon, Rng& rng) {
  auto dist = discrete_distribution(store, word, epsilon);
  double u = rng.uniform_real();
  double cumulative = 0.0;
  const std::string* last = nullptr;
  for (const auto& [candidate, probability] : dist) {
    cumulative += probability;
    last = &candidate;
    if (u < cumulative) return candidate;
  }
  return *last;  // u landed in trailing rounding slack
}

std::string sample_continuous(const VectorStore& store,
                              const std::string& word, double epsilon,
                              Rng& rng) {
  const auto& base = store.unit(word);
  std::vector<double> direction(store.dim);
  double n = 0.0;
  do {
    for (auto& component : direction) component = rng.normal();
    n = norm(direction);
  } while (n < 1e-12);
  double radius =
      rng.gamma_integer_shape(static_cast<unsigned>(store.dim), epsilon);
  std::vector<double> noised(store.dim);
  for (std::size_t i = 0; i < store.dim; ++i) {
    noised[i] = base[i] + radius * direction[i] / n;
  }
  if (norm(noised) < 1e-12) return word;  // noise cancelled the vector
  return nearest_neighbors(store, noised, 1, {}).front().token;
}

}  // namespace

std::string privatize_word(const VectorStore& store, const std::string& word,
                           const MechanismConfig& cfg, Rng& rng) {
  if (cfg.epsilon <= 0.0) throw InputError("epsilon must be positive");
  switch (cfg.mode) {
    case MechanismMode::discrete_exponential:
      return sample_discrete(store, word, cfg.epsilon, rng);
    case MechanismMode::continuous_laplace:
      return sample_continuous(store, word, cfg.epsilon, rng);
  }
  throw InputError("unknown mechanism mode");
}

std::vector<std::string> privatize_bag(const VectorStore& store,
                                       const std::vector<std::string>& bag,
                                       const MechanismConfig& cfg, Rng& rng,
                                       std::size_t* oov_count) {
  std::vector<std::string> out;
  out.reserve(bag.size());
  std::size_t oov = 0;
  for (const auto& token : bag) {
    if (!store.contains(token)) {
      ++oov;
      out.push_back(token);
      continue;
    }
    out.push_back(privatize_word(store, token, cfg, rng));
  }
  if (oov_count) *oov_count = oov;
  return out;
}

}  // namespace honeytext
