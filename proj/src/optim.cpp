// SPDX-License-Identifier: Apache-2.0
#include "peekgrad/optim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace peekgrad {

std::string to_string(OptimizerKind kind) { return kind == OptimizerKind::gd ? "gd" : "adam"; }

OptimizerKind parse_optimizer(std::string_view name) {
  if (name == "gd") return OptimizerKind::gd;
  if (name == "adam") return OptimizerKind::adam;
  throw std::invalid_argument("unknown optimizer '" + std::string(name) + "'");
}

IterateState IterateState::start(std::vector<double> theta0) {
  IterateState s;
  s.m.assign(theta0.size(), 0.0);
  s.v.assign(theta0.size(), 0.0);
  s.theta = std::move(theta0);
  return s;
}

namespace {

void check_gradient(const IterateState& s, std::span<const double> g, double lr) {
  if (g.size() != s.theta.size()) throw std::invalid_argument("optimizer step: gradient dimension mismatch");
  if (!(lr > 0.0) || !std::isfinite(lr)) throw std::invalid_argument("optimizer step: learning rate must be > 0");
  for (double v : g) {
    if (!std::isfinite(v)) throw std::domain_error("optimizer step: non-finite gradient entry");
  }
}

}  // namespace

IterateState gd_step(IterateState s, std::span<const double> g, double lr) {
  check_gradient(s, g, lr);
  for (std::size_t i = 0; i < g.size(); ++i) s.theta[i] -= lr * g[i];
  ++s.t;
  return s;
}

IterateState adam_step(IterateState s, std::span<const double> g, double lr, const AdamConstants& k) {
  check_gradient(s, g, lr);
  if (s.m.size() != s.theta.size()) s.m.assign(s.theta.size(), 0.0);
  if (s.v.size() != s.theta.size()) s.v.assign(s.theta.size(), 0.0);
  ++s.t;
  const double c1 = 1.0 - std::pow(k.beta1, static_cast<double>(s.t));
  const double c2 = 1.0 - std::pow(k.beta2, static_cast<double>(s.t));
  for (std::size_t i = 0; i < g.size(); ++i) {
    s.m[i] = k.beta1 * s.m[i] + (1.0 - k.beta1) * g[i];
    s.v[i] = k.beta2 * s.v[i] + (1.0 - k.beta2) * g[i] * g[i];
    const double m_hat = s.m[i] / c1;
    const double v_hat = s.v[i] / c2;
    s.theta[i] -= lr * m_hat / (std::sqrt(v_hat) + k.epsilon);
  }
  return s;
}

std::vector<std::int64_t> project(std::span<const double> theta, std::span<const std::int64_t> lo,
                                  std::span<const std::int64_t> hi) {
  if (lo.size() != theta.size() || hi.size() != theta.size()) {
    throw std::invalid_argument("project: bounds dimension mismatch");
  }
  std::vector<std::int64_t> x(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double clamped = std::clamp(theta[i], static_cast<double>(lo[i]), static_cast<double>(hi[i]));
    x[i] = std::clamp<std::int64_t>(std::llround(clamped), lo[i], hi[i]);
  }
  return x;
}

void OptimRunConfig::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw std::invalid_argument("optimizer: learning rate must be > 0");
  }
  if (objective_evaluations < 1) throw std::invalid_argument("optimizer: need at least one objective evaluation");
  estimator_cfg.validate();
}

namespace {

double objective_at(const ObjectiveModel& model, std::span<const std::int64_t> x, const OptimRunConfig& cfg,
                    std::size_t step) {
  double sum = 0.0;
  for (std::size_t k = 0; k < cfg.objective_evaluations; ++k) {
    Stream s(derive_seed(cfg.objective_seed, step * cfg.objective_evaluations + k));
    sum += model.evaluate_at(x, s);
  }
  return sum / static_cast<double>(cfg.objective_evaluations);
}

}  // namespace

Trajectory run(const ObjectiveModel& model, const OptimRunConfig& cfg, std::vector<double> theta0, Stream& rng) {
  cfg.validate();
  if (theta0.size() != model.dimension()) throw std::invalid_argument("optimizer: start point dimension mismatch");
  const auto lo = model.lower_bounds();
  const auto hi = model.upper_bounds();
  const Estimator estimator(cfg.estimator_cfg);
  constexpr std::size_t kEvaluationsPerEstimate = 2;

  const auto t0 = std::chrono::steady_clock::now();
  const auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  Trajectory traj;
  IterateState state = IterateState::start(std::move(theta0));
  std::size_t evaluations = 0;
  try {
    auto x = project(state.theta, lo, hi);
    traj.points.push_back({0, 0, elapsed(), objective_at(model, x, cfg, 0), state.theta});
    for (std::size_t step = 1; step <= cfg.steps; ++step) {
      if (cfg.evaluation_budget > 0 && evaluations + kEvaluationsPerEstimate > cfg.evaluation_budget) break;
      const auto g = estimator.estimate(cfg.estimator, model, x, rng);
      evaluations += kEvaluationsPerEstimate;
      state = cfg.optimizer == OptimizerKind::gd ? gd_step(std::move(state), g.partials, cfg.learning_rate)
                                                 : adam_step(std::move(state), g.partials, cfg.learning_rate);
      x = project(state.theta, lo, hi);
      traj.points.push_back({step, evaluations, elapsed(), objective_at(model, x, cfg, step), state.theta});
    }
  } catch (const std::exception& e) {
    traj.error = e.what();
  }
  return traj;
}

}  // namespace peekgrad
