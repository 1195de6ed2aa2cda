// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "peekgrad/estimators.hpp"
#include "peekgrad/model.hpp"
#include "peekgrad/rng.hpp"

namespace peekgrad {

enum class OptimizerKind { gd, adam };

std::string to_string(OptimizerKind kind);
OptimizerKind parse_optimizer(std::string_view name);

/// Continuous iterate plus Adam moments.
struct IterateState {
  std::vector<double> theta;
  std::vector<double> m;
  std::vector<double> v;
  std::size_t t = 0;

  static IterateState start(std::vector<double> theta0);
};

struct AdamConstants {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// theta <- theta - lr * g. Throws std::invalid_argument on a dimension
/// mismatch and std::domain_error on non-finite gradient entries.
IterateState gd_step(IterateState state, std::span<const double> g, double lr);

/// Bias-corrected Adam update.
IterateState adam_step(IterateState state, std::span<const double> g, double lr, const AdamConstants& k = {});

/// Round half away from zero, then clamp into [lo, hi].
std::vector<std::int64_t> project(std::span<const double> theta, std::span<const std::int64_t> lo,
                                  std::span<const std::int64_t> hi);

struct OptimRunConfig {
  OptimizerKind optimizer = OptimizerKind::gd;
  double learning_rate = 0.01;
  EstimatorKind estimator = EstimatorKind::pgo_dp;
  EstimatorConfig estimator_cfg;
  std::size_t steps = 100;
  /// Stop before a step would exceed this many estimator evaluations; 0 = unlimited.
  std::size_t evaluation_budget = 0;
  /// Model evaluations averaged for each reported objective value.
  std::size_t objective_evaluations = 1;
  /// Master seed of the reporting streams. Shared across estimators so that
  /// trajectories of different methods are compared on common random numbers.
  std::uint64_t objective_seed = 0;

  void validate() const;
};

struct TrajectoryPoint {
  std::size_t step = 0;
  std::size_t evaluations = 0;  // estimator evaluations spent so far
  double elapsed_seconds = 0.0;
  double objective = 0.0;
  std::vector<double> theta;
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  /// Non-empty when the replication aborted.
  std::string error;
};

/// Minimizes `model` starting at theta0. Deterministic given `rng` state and
/// cfg.objective_seed, except for elapsed_seconds.
Trajectory run(const ObjectiveModel& model, const OptimRunConfig& cfg, std::vector<double> theta0, Stream& rng);

}  // namespace peekgrad
