#pragma once

#include <iterator>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "honeytext/errors.hpp"
#include "honeytext/keywords.hpp"
#include "honeytext/rng.hpp"

namespace honeytext {

enum class Pos { noun, adjective, verb, adverb };

struct Synset {
  std::string id;
  Pos pos = Pos::noun;
  std::vector<std::string> lemmas;
  std::vector<std::string> hypernyms;
};

// Hypernym DAG (validated acyclic at load) with a lemma -> synsets index
// and the reverse (hyponym) edges precomputed for subtree walks.
struct SynsetGraph {
  std::map<std::string, Synset> synsets;
  std::map<std::string, std::vector<std::string>> lemma_index;  // ids sorted
  std::map<std::string, std::vector<std::string>> hyponyms;

  bool contains(const std::string& id) const {
    return synsets.count(id) != 0;
  }
  const Synset& at(const std::string& id) const;
  bool empty() const { return synsets.empty(); }
};

// TSV: id <tab> pos(n|a|v|r) <tab> lemma,lemma,... <tab> hypernym,ids
// (fourth field empty or absent for roots). Rejects dangling hypernym ids
// (parse error with the offending line) and hypernym cycles (graph error
// naming a member).
SynsetGraph parse_synset_graph(const std::string& path);

// Random walk upward: at each node halt with probability p_halt, otherwise
// step to a uniformly chosen parent. A root always halts and consumes no
// randomness. 0 < p_halt <= 1.
std::string hypernym_ascent(const SynsetGraph& graph, const std::string& start,
                            double p_halt, Rng& rng);

// Lemmas of every synset reachable downward from root (root included) whose
// pos is in the filter; synsets visited in id order, lemmas deduplicated.
std::vector<std::string> collect_hyponym_subtree(const SynsetGraph& graph,
                                                 const std::string& root,
                                                 const std::set<Pos>& pos_filter);

// Algorithm R: uniform k-subset of a single-pass stream. Shorter streams
// are returned whole, in stream order.
template <typename Iter>
std::vector<typename std::iterator_traits<Iter>::value_type> reservoir_sample(
    Iter first, Iter last, std::size_t k, Rng& rng) {
  if (k == 0) throw InputError("reservoir size must be at least 1");
  std::vector<typename std::iterator_traits<Iter>::value_type> reservoir;
  std::size_t seen = 0;
  for (; first != last; ++first, ++seen) {
    if (reservoir.size() < k) {
      reservoir.push_back(*first);
      continue;
    }
    std::uint64_t j = rng.uniform_index(seen + 1);
    if (j < k) reservoir[static_cast<std::size_t>(j)] = *first;
  }
  return reservoir;
}

// For each keyword: take its first (lowest-id) synset, ascend, collect the
// landing synset's subtree, and sample per_keyword replacement lemmas with
// the original keyword excluded. Keywords absent from the graph, or whose
// candidate pool is empty after exclusion, pass through unchanged.
std::vector<std::string> perturb_keywords(
    const SynsetGraph& graph, const std::vector<Keyword>& keywords,
    double p_halt, std::size_t per_keyword, Rng& rng,
    const std::set<Pos>& pos_filter = {Pos::noun, Pos::adjective});

}  // namespace honeytext
