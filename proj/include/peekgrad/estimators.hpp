// SPDX-License-Identifier: Apache-2.0
#pragma once

// Forward-difference zeroth-order gradient estimators on the integer lattice.
//
//   PGO:     g_i = (f(x + R) - f(x)) R_i / sigma^2,  R ~ rounded N(0, sigma^2 I)
//   PGO-DP:  for every peeked dimension i, average the PGO term over all
//            grid offsets o that stayed control-flow equivalent to R_i,
//            weighted by pmf(o) and renormalized by the covered mass:
//              g_i = sum_{o in S} pmf(o) (f_{-i}(x_i + o) - f(x)) o
//                    / (sigma^2 * sum_{o in S} pmf(o))
//            Dimensions with |R_i| > c use the PGO term.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "peekgrad/dgauss.hpp"
#include "peekgrad/model.hpp"
#include "peekgrad/rng.hpp"

namespace peekgrad {

enum class EstimatorKind { pgo, pgo_dp };

std::string to_string(EstimatorKind kind);
EstimatorKind parse_estimator(std::string_view name);

struct EstimatorConfig {
  double sigma = 1.0;
  /// Coverage radius c = ceil(c_factor * sigma). Zero disables peeking.
  double c_factor = 3.0;
  /// Share the model's random stream between f(x) and f(x + R).
  bool common_random_numbers = true;

  std::int64_t radius() const;
  void validate() const;
};

struct GradientEstimate {
  std::vector<double> partials;
  std::vector<std::uint8_t> peeked;
  std::vector<std::int64_t> draw;
  double y1 = 0.0;  // f(x + R)
  double y0 = 0.0;  // f(x)
};

/// Model-stream seeds for one estimate.
struct StreamSeeds {
  std::uint64_t baseline = 0;   // f(x)
  std::uint64_t perturbed = 0;  // f(x + R) and all peeked alternatives
};

class Estimator {
 public:
  explicit Estimator(EstimatorConfig cfg);

  const EstimatorConfig& config() const { return cfg_; }
  const DiscreteGaussian& law() const { return law_; }

  /// Samples R (d draws) and two model-stream seeds from `rng`; pgo and
  /// pgo_dp consume `rng` identically, so equal stream states pair them.
  GradientEstimate estimate(EstimatorKind kind, const ObjectiveModel& model, std::span<const std::int64_t> x,
                            Stream& rng) const;
  GradientEstimate pgo(const ObjectiveModel& model, std::span<const std::int64_t> x, Stream& rng) const {
    return estimate(EstimatorKind::pgo, model, x, rng);
  }
  GradientEstimate pgo_dp(const ObjectiveModel& model, std::span<const std::int64_t> x, Stream& rng) const {
    return estimate(EstimatorKind::pgo_dp, model, x, rng);
  }

  /// Forced-draw variants.
  GradientEstimate estimate_with(EstimatorKind kind, const ObjectiveModel& model, std::span<const std::int64_t> x,
                                 std::span<const std::int64_t> r, StreamSeeds seeds) const;
  GradientEstimate pgo_with(const ObjectiveModel& model, std::span<const std::int64_t> x,
                            std::span<const std::int64_t> r, StreamSeeds seeds = {}) const;
  GradientEstimate pgo_dp_with(const ObjectiveModel& model, std::span<const std::int64_t> x,
                               std::span<const std::int64_t> r, StreamSeeds seeds = {}) const;

  std::vector<std::int64_t> sample_draw(std::size_t d, Stream& rng) const;
  StreamSeeds sample_seeds(Stream& rng) const;

 private:
  EstimatorConfig cfg_;
  DiscreteGaussian law_;
};

/// Exact per-dimension mean and variance of an estimator over the full
/// enumeration of R in [-T, T]^d (deterministic models only).
struct ExactMoments {
  std::vector<double> mean;
  std::vector<double> variance;
  std::size_t evaluations = 0;
};

/// Throws std::invalid_argument for stochastic models and std::length_error
/// when (2T + 1)^d exceeds `budget`. T = 0 selects ceil(15 sigma).
ExactMoments expectation_oracle(const ObjectiveModel& model, std::span<const std::int64_t> x,
                                const EstimatorConfig& cfg, EstimatorKind kind, std::int64_t trunc = 0,
                                std::size_t budget = 4'000'000);

struct SampleMoments {
  std::vector<double> mean;
  std::vector<double> variance;  // unbiased
  std::size_t n = 0;

  double standard_error(std::size_t i) const;
};

using EstimateFn = std::function<std::vector<double>(Stream&)>;

/// Sequential replications drawing from one stream.
SampleMoments moments(const EstimateFn& fn, std::size_t n, Stream& rng);

/// Replication k runs on Stream(derive_seed(seed, k)). Replications are
/// grouped in fixed chunks whose statistics are merged in chunk order, so the
/// result does not depend on `threads`.
SampleMoments replicate_moments(const EstimateFn& fn, std::size_t n, std::uint64_t seed,
                                std::size_t threads = 1);

}  // namespace peekgrad
