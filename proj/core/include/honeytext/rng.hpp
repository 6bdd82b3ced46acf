#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "honeytext/errors.hpp"

namespace honeytext {

/// Seedable randomness source used by every stochastic operation.
///
/// All derived draws (indices, reals, gaussians) are implemented here on top
/// of std::mt19937_64 rather than through std::*_distribution, because the
/// standard does not pin down distribution output and reproducibility across
/// toolchains is part of the file-format contract. Identical seed, identical
/// draw sequence, everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t uniform_index(std::uint64_t n) {
    if (n == 0) throw InputError("uniform_index requires n > 0");
    // Rejection sampling over the smallest covering power of two keeps the
    // result exactly uniform.
    std::uint64_t mask = n - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    for (;;) {
      std::uint64_t v = engine_() & mask;
      if (v < n) return v;
    }
  }

  /// Uniform real in [0, 1) with 53 bits of precision.
  double uniform_real() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform_real() < p; }

  /// Standard normal via Box-Muller; one spare value cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform_real();
    double u2 = uniform_real();
    while (u1 <= 0.0) u1 = uniform_real();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  /// Exponential with the given rate (mean 1/rate).
  double exponential(double rate) {
    double u = uniform_real();
    while (u <= 0.0) u = uniform_real();
    return -std::log(u) / rate;
  }

  /// Gamma(shape = k, scale = 1/rate) for integer shape, as a sum of
  /// exponentials.
  double gamma_integer_shape(unsigned k, double rate) {
    double sum = 0.0;
    for (unsigned i = 0; i < k; ++i) sum += exponential(rate);
    return sum;
  }

  void fill_bytes(std::uint8_t* out, std::size_t n) {
    std::size_t i = 0;
    while (i < n) {
      std::uint64_t v = engine_();
      for (int b = 7; b >= 0 && i < n; --b) {
        out[i++] = static_cast<std::uint8_t>((v >> (8 * b)) & 0xff);
      }
    }
  }

  /// Independent child source for task `index`, derived from a base word.
  /// Callers draw the base once (next_u64()) and split per task index, so
  /// per-task streams do not depend on the order tasks run in.
  static Rng split(std::uint64_t base, std::uint64_t index) {
    return Rng(mix(base, index));
  }

  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    // splitmix64 finalizer over the combined words.
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace honeytext
