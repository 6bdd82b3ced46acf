#include "honeytext/dte.hpp"

#include <cmath>

#include "honeytext/errors.hpp"

namespace honeytext {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

unsigned log2_exact(std::size_t n) {
  unsigned bits = 0;
  while (n > 1) {
    n >>= 1;
    ++bits;
  }
  return bits;
}

}  // namespace

std::pair<DecoyTable, Seed> encode(const std::string& message,
                                   const DecoyPipeline& pipeline,
                                   std::size_t table_size, Rng& rng) {
  if (!is_power_of_two(table_size) || table_size < 2) {
    throw InputError("table size must be a power of two, at least 2");
  }
  if (message.empty()) throw InputError("message is empty");

  DecoyTable table;
  table.size = table_size;
  table.true_seed = static_cast<std::size_t>(rng.uniform_index(table_size));
  table.entries.assign(table_size, std::string());
  table.entries[table.true_seed] = message;

  const std::uint64_t base = rng.next_u64();
  for (std::size_t slot = 0; slot < table_size; ++slot) {
    if (slot == table.true_seed) continue;
    Rng slot_rng = Rng::split(base, slot);
    std::string decoy = pipeline.make_decoy(message, slot_rng);
    if (decoy.empty() || decoy == message) {
      decoy = pipeline.make_decoy(message, slot_rng);  // one fresh retry
    }
    if (decoy.empty()) decoy = pipeline.random_token(slot_rng);
    if (decoy == message) {
      decoy += ' ' + pipeline.random_token(slot_rng);
    }
    table.entries[slot] = std::move(decoy);
  }

  Seed seed{table.true_seed, log2_exact(table_size)};
  return {std::move(table), seed};
}

const std::string& decode(const DecoyTable& table, const Seed& seed) {
  if (seed.value >= table.size) {
    throw RangeError("seed " + std::to_string(seed.value) +
                     " outside table of size " + std::to_string(table.size));
  }
  return table.entries[static_cast<std::size_t>(seed.value)];
}

double estimate_dte_advantage(const TableBuilder& builder,
                              const Distinguisher& distinguisher,
                              std::size_t trials, Rng& rng) {
  if (trials == 0) throw InputError("trials must be at least 1");

  std::size_t accept_real = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    auto [table, seed] = builder(rng);
    if (distinguisher(decode(table, seed), seed)) ++accept_real;
  }

  std::size_t accept_uniform = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    auto [table, seed] = builder(rng);
    (void)seed;
    Seed drawn{rng.uniform_index(table.size), log2_exact(table.size)};
    if (distinguisher(decode(table, drawn), drawn)) ++accept_uniform;
  }

  double p1 = static_cast<double>(accept_real) / static_cast<double>(trials);
  double p0 =
      static_cast<double>(accept_uniform) / static_cast<double>(trials);
  return std::abs(p1 - p0);
}

}  // namespace honeytext
