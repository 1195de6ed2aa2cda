// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "peekgrad/rng.hpp"

namespace peekgrad {

/// Rounded Gaussian on the integers: P(R = r) is the mass of N(0, sigma^2)
/// on [r - 0.5, r + 0.5].
struct DiscreteGaussianSpec {
  double sigma = 1.0;
  /// Cutoff for exact sums. Zero selects ceil(15 * sigma).
  std::int64_t trunc_radius = 0;

  /// Throws std::invalid_argument for non-finite or non-positive sigma.
  void validate() const;
  std::int64_t effective_trunc() const;
};

/// Default truncation radius ceil(15 * sigma).
std::int64_t default_trunc_radius(double sigma);

double pmf(std::int64_t r, const DiscreteGaussianSpec& spec);

/// Sum of pmf over a set of distinct offsets, accumulated in ascending order.
double mass(std::span<const std::int64_t> offsets, const DiscreteGaussianSpec& spec);

/// Draws round(N(0, sigma^2)). Consumes one normal variate from the stream.
std::int64_t sample(const DiscreteGaussianSpec& spec, Stream& rng);

/// Cached pmf table over [-trunc, trunc]; falls back to direct evaluation
/// outside the table.
class DiscreteGaussian {
 public:
  explicit DiscreteGaussian(DiscreteGaussianSpec spec);

  const DiscreteGaussianSpec& spec() const { return spec_; }
  double sigma() const { return spec_.sigma; }
  std::int64_t trunc() const { return trunc_; }

  double pmf(std::int64_t r) const {
    if (r >= -trunc_ && r <= trunc_) return table_[static_cast<std::size_t>(r + trunc_)];
    return peekgrad::pmf(r, spec_);
  }

  std::int64_t sample(Stream& rng) const { return peekgrad::sample(spec_, rng); }

 private:
  DiscreteGaussianSpec spec_;
  std::int64_t trunc_;
  std::vector<double> table_;
};

}  // namespace peekgrad
