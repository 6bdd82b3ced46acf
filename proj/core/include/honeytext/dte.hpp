#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "honeytext/pipeline.hpp"
#include "honeytext/rng.hpp"

namespace honeytext {

// The encoder's associative array: T messages, one of which is real.
// true_seed exists only in memory at build time; serialization (he module)
// writes the entries alone.
struct DecoyTable {
  std::size_t size = 0;  // power of two, >= 2
  std::vector<std::string> entries;
  std::size_t true_seed = 0;
};

struct Seed {
  std::uint64_t value = 0;
  unsigned bit_width = 0;  // log2 of the table size
};

// Draws a uniform seed, plants the message there, and fills the other
// T - 1 slots with pipeline decoys. Each slot's randomness is split from
// one base draw by slot index, so decoy i does not depend on how many
// slots precede it. A decoy that collides with the message is regenerated
// once and then suffix-perturbed, keeping every wrong seed's story false.
std::pair<DecoyTable, Seed> encode(const std::string& message,
                                   const DecoyPipeline& pipeline,
                                   std::size_t table_size, Rng& rng);

// Total on [0, size): every in-range seed yields a message.
const std::string& decode(const DecoyTable& table, const Seed& seed);

using TableBuilder = std::function<std::pair<DecoyTable, Seed>(Rng&)>;
using Distinguisher =
    std::function<int(const std::string& message, const Seed& seed)>;

// Runs the real-pair game (fresh build, present the planted message and
// its seed) and the uniform-seed game (fresh build, decode a uniform
// seed), `trials` times each; returns |acceptance(G1) - acceptance(G0)|.
double estimate_dte_advantage(const TableBuilder& builder,
                              const Distinguisher& distinguisher,
                              std::size_t trials, Rng& rng);

}  // namespace honeytext
