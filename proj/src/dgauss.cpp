// SPDX-License-Identifier: Apache-2.0
#include "peekgrad/dgauss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace peekgrad {

namespace {

// Upper tail of the standard normal, Q(z) = 1 - Phi(z), accurate for large z.
double upper_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

}  // namespace

void DiscreteGaussianSpec::validate() const {
  if (!std::isfinite(sigma) || sigma <= 0.0) {
    throw std::invalid_argument("invalid discrete Gaussian spec: sigma must be finite and > 0, got " +
                                std::to_string(sigma));
  }
  if (trunc_radius < 0) {
    throw std::invalid_argument("invalid discrete Gaussian spec: negative truncation radius");
  }
}

std::int64_t DiscreteGaussianSpec::effective_trunc() const {
  return trunc_radius > 0 ? trunc_radius : default_trunc_radius(sigma);
}

std::int64_t default_trunc_radius(double sigma) {
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(15.0 * sigma)));
}

double pmf(std::int64_t r, const DiscreteGaussianSpec& spec) {
  spec.validate();
  const double s = spec.sigma;
  if (r == 0) return std::erf(0.5 / (s * std::sqrt(2.0)));
  // Evaluate on the upper tail so that far-out masses keep full relative precision.
  const double a = static_cast<double>(r < 0 ? -r : r);
  return upper_tail((a - 0.5) / s) - upper_tail((a + 0.5) / s);
}

double mass(std::span<const std::int64_t> offsets, const DiscreteGaussianSpec& spec) {
  std::vector<std::int64_t> sorted(offsets.begin(), offsets.end());
  std::sort(sorted.begin(), sorted.end());
  double total = 0.0;
  for (auto r : sorted) total += pmf(r, spec);
  return total;
}

std::int64_t sample(const DiscreteGaussianSpec& spec, Stream& rng) {
  return std::llround(spec.sigma * rng.normal());
}

DiscreteGaussian::DiscreteGaussian(DiscreteGaussianSpec spec)
    : spec_(spec), trunc_(0) {
  spec_.validate();
  trunc_ = spec_.effective_trunc();
  table_.resize(static_cast<std::size_t>(2 * trunc_ + 1));
  for (std::int64_t r = -trunc_; r <= trunc_; ++r) {
    table_[static_cast<std::size_t>(r + trunc_)] = peekgrad::pmf(r, spec_);
  }
}

}  // namespace peekgrad
