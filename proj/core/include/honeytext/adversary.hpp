#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "honeytext/corpus.hpp"
#include "honeytext/embeddings.hpp"
#include "honeytext/pipeline.hpp"

namespace honeytext {

// Mean of the message's in-vocabulary token unit vectors, re-normalized.
// A message with no in-vocabulary tokens has no representation.
std::vector<double> embed_message(const VectorStore& store,
                                  const std::string& message);

struct AuthorProfile {
  std::vector<double> centroid;  // mean of sample embeddings
  std::size_t sample_count = 0;
};

AuthorProfile build_profile(const VectorStore& store,
                            const std::vector<std::string>& samples);

// 1 iff cosine(centroid, message embedding) clears the threshold
// coeff * epsilon. A threshold above 1 can never be cleared.
int distinguish(const AuthorProfile& profile, const std::string& message,
                const VectorStore& store, double epsilon, double coeff);

struct ExperimentConfig {
  std::vector<double> epsilons;           // ascending
  std::vector<std::size_t> decoy_counts;  // positive
  double threshold_coefficient = 0.03;
  std::uint64_t rng_seed = 0;
};

struct ExperimentCell {
  std::size_t distinguished_author = 0;
  std::size_t distinguished_context = 0;
  std::size_t failures = 0;
};

struct ExperimentResult {
  std::vector<double> epsilons;
  std::vector<std::size_t> decoy_counts;
  std::vector<std::vector<ExperimentCell>> cells;  // [epsilon][count]
  std::string category;  // the context profile's category
};

// For every (epsilon, decoy count) cell: synthesize that many decoys from
// the author samples (round robin) at that epsilon, and count how many an
// author-profile distinguisher and a whole-category-profile distinguisher
// each flag. Cell randomness derives from (seed, cell indices) so cells
// are order-independent. Decoy or embedding failures are counted, never
// fatal.
ExperimentResult run_distinguisher_experiment(
    const ExperimentConfig& cfg, const DecoyPipeline& pipeline,
    const VectorStore& store, const std::vector<std::string>& author_samples,
    const CategorizedCorpus& context_corpus);

enum class ProfileKind { author, context };

// CSV with epsilon rows and one column per decoy count.
std::string to_csv(const ExperimentResult& result, ProfileKind kind);
std::string to_text(const ExperimentResult& result);

// Rank correlation with average ranks on ties; defined as 0 when either
// side has no rank variance (a constant series is weakly monotone).
double spearman_rho(const std::vector<double>& xs,
                    const std::vector<double>& ys);

}  // namespace honeytext
