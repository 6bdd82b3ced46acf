#include "honeytext/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "honeytext/errors.hpp"

namespace honeytext {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double na = std::sqrt(dot(a, a));
  double nb = std::sqrt(dot(b, b));
  if (na < 1e-12 || nb < 1e-12) {
    throw InputError("cosine undefined for a zero vector");
  }
  return dot(a, b) / (na * nb);
}

std::vector<double> average_ranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    double shared = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

std::vector<double> embed_message(const VectorStore& store,
                                  const std::string& message) {
  std::vector<double> mean(store.dim, 0.0);
  std::size_t hits = 0;
  for (const auto& token : tokenize(message)) {
    auto it = store.normalized.find(token);
    if (it == store.normalized.end()) continue;
    for (std::size_t i = 0; i < store.dim; ++i) mean[i] += it->second[i];
    ++hits;
  }
  if (hits == 0) {
    throw InputError("message has no in-vocabulary tokens");
  }
  double n = 0.0;
  for (auto& component : mean) {
    component /= static_cast<double>(hits);
    n += component * component;
  }
  n = std::sqrt(n);
  if (n < 1e-12) {
    throw InputError("message embedding cancelled to zero");
  }
  for (auto& component : mean) component /= n;
  return mean;
}

AuthorProfile build_profile(const VectorStore& store,
                            const std::vector<std::string>& samples) {
  if (samples.empty()) throw InputError("profile needs at least one sample");
  AuthorProfile profile;
  profile.centroid.assign(store.dim, 0.0);
  for (const auto& sample : samples) {
    auto embedding = embed_message(store, sample);
    for (std::size_t i = 0; i < store.dim; ++i) {
      profile.centroid[i] += embedding[i];
    }
  }
  for (auto& component : profile.centroid) {
    component /= static_cast<double>(samples.size());
  }
  profile.sample_count = samples.size();
  return profile;
}

int distinguish(const AuthorProfile& profile, const std::string& message,
                const VectorStore& store, double epsilon, double coeff) {
  double threshold = coeff * epsilon;
  if (threshold > 1.0) return 0;  // no cosine can clear it
  if (threshold < -1.0) threshold = -1.0;
  double score = cosine(profile.centroid, embed_message(store, message));
  return score >= threshold ? 1 : 0;
}

ExperimentResult run_distinguisher_experiment(
    const ExperimentConfig& cfg, const DecoyPipeline& pipeline,
    const VectorStore& store, const std::vector<std::string>& author_samples,
    const CategorizedCorpus& context_corpus) {
  if (author_samples.empty()) {
    throw InputError("experiment needs author samples");
  }
  if (cfg.epsilons.empty() || cfg.decoy_counts.empty()) {
    throw InputError("experiment needs epsilons and decoy counts");
  }
  if (!std::is_sorted(cfg.epsilons.begin(), cfg.epsilons.end())) {
    throw InputError("epsilons must be ascending");
  }

  AuthorProfile author = build_profile(store, author_samples);

  // The context profile sees the author's whole category, rebuilt from the
  // stored token streams.
  TokenBag sample_bag =
      preprocess(tokenize(author_samples.front()), pipeline.stopwords(), true);
  std::string category = classify(pipeline.classifier(), sample_bag);
  std::vector<std::string> category_texts;
  for (const Document* doc : context_corpus.documents_in(category)) {
    std::string text;
    for (std::size_t i = 0; i < doc->tokens.size(); ++i) {
      if (i) text += ' ';
      text += doc->tokens[i];
    }
    if (!text.empty()) category_texts.push_back(std::move(text));
  }
  if (category_texts.empty()) {
    throw InputError("no context documents for category: " + category);
  }
  AuthorProfile context = build_profile(store, category_texts);

  ExperimentResult result;
  result.epsilons = cfg.epsilons;
  result.decoy_counts = cfg.decoy_counts;
  result.category = category;
  result.cells.assign(cfg.epsilons.size(),
                      std::vector<ExperimentCell>(cfg.decoy_counts.size()));

  for (std::size_t e = 0; e < cfg.epsilons.size(); ++e) {
    for (std::size_t c = 0; c < cfg.decoy_counts.size(); ++c) {
      Rng cell_rng(Rng::mix(Rng::mix(cfg.rng_seed, e), c));
      ExperimentCell& cell = result.cells[e][c];
      for (std::size_t k = 0; k < cfg.decoy_counts[c]; ++k) {
        const std::string& source =
            author_samples[k % author_samples.size()];
        try {
          std::string decoy =
              pipeline.make_decoy(source, cell_rng, cfg.epsilons[e]);
          cell.distinguished_author += static_cast<std::size_t>(distinguish(
              author, decoy, store, cfg.epsilons[e],
              cfg.threshold_coefficient));
          cell.distinguished_context += static_cast<std::size_t>(distinguish(
              context, decoy, store, cfg.epsilons[e],
              cfg.threshold_coefficient));
        } catch (const Error&) {
          ++cell.failures;
        }
      }
    }
  }
  return result;
}

std::string to_csv(const ExperimentResult& result, ProfileKind kind) {
  std::ostringstream out;
  out << "epsilon";
  for (std::size_t count : result.decoy_counts) out << ",n=" << count;
  out << '\n';
  for (std::size_t e = 0; e < result.epsilons.size(); ++e) {
    out << result.epsilons[e];
    for (std::size_t c = 0; c < result.decoy_counts.size(); ++c) {
      const ExperimentCell& cell = result.cells[e][c];
      out << ','
          << (kind == ProfileKind::author ? cell.distinguished_author
                                          : cell.distinguished_context);
    }
    out << '\n';
  }
  return out.str();
}

std::string to_text(const ExperimentResult& result) {
  std::ostringstream out;
  out << "category: " << result.category << "\n\n";
  out << "distinguished by author profile:\n" << to_csv(result, ProfileKind::author);
  out << "\ndistinguished by context profile:\n"
      << to_csv(result, ProfileKind::context);
  std::size_t failures = 0;
  for (const auto& row : result.cells) {
    for (const auto& cell : row) failures += cell.failures;
  }
  if (failures) out << "\nfailures: " << failures << '\n';
  return out.str();
}

double spearman_rho(const std::vector<double>& xs,
                    const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw InputError("rank correlation needs two equal-length series");
  }
  auto rx = average_ranks(xs);
  auto ry = average_ranks(ys);
  const double n = static_cast<double>(xs.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mean_x += rx[i];
    mean_y += ry[i];
  }
  mean_x /= n;
  mean_y /= n;
  double cov = 0.0, var_x = 0.0, var_y = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double dx = rx[i] - mean_x;
    double dy = ry[i] - mean_y;
    cov += dx * dy;
    var_x += dx * dx;
    var_y += dy * dy;
  }
  if (var_x < 1e-12 || var_y < 1e-12) return 0.0;  // constant series
  return cov / std::sqrt(var_x * var_y);
}

}  // namespace honeytext
