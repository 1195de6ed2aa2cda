// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace peekgrad {

/// Seeded random stream with a draw counter.
///
/// Satisfies UniformRandomBitGenerator so that standard distributions can
/// consume it. Every call to operator() counts as one draw, which lets tests
/// check that peeked and scalar runs consume randomness identically.
class Stream {
 public:
  using result_type = std::uint64_t;

  explicit Stream(std::uint64_t seed = 0) : engine_(seed) {}

  static constexpr result_type min() { return std::numeric_limits<result_type>::min(); }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    ++draws_;
    return engine_();
  }

  /// Uniform in (0, 1); never returns exactly 0 or 1.
  double uniform();
  /// Standard normal variate.
  double normal();

  std::uint64_t draws() const { return draws_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uint64_t draws_ = 0;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z);

/// Seed for stream `index` derived from a master seed:
/// mix64(master + (index + 1) * 0x9E3779B97F4A7C15).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace peekgrad
