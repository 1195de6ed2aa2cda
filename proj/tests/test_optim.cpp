// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "peekgrad/models.hpp"
#include "peekgrad/optim.hpp"

namespace peekgrad {
namespace {

TEST(GdStep, Examples) {
  auto s = IterateState::start({0.0});
  const std::vector<double> g{2.0};
  s = gd_step(s, g, 0.5);
  EXPECT_EQ(s.theta, (std::vector<double>{-1.0}));
  const std::vector<double> zero{0.0};
  EXPECT_EQ(gd_step(s, zero, 0.5).theta, s.theta);
  s = gd_step(s, g, 0.5);
  EXPECT_EQ(s.theta, (std::vector<double>{-2.0}));
  EXPECT_EQ(s.t, 2u);
}

TEST(GdStep, RejectsBadInput) {
  const auto s = IterateState::start({0.0, 1.0});
  const std::vector<double> nan{std::numeric_limits<double>::quiet_NaN(), 0.0};
  EXPECT_THROW(gd_step(s, nan, 0.1), std::domain_error);
  const std::vector<double> short_g{1.0};
  EXPECT_THROW(gd_step(s, short_g, 0.1), std::invalid_argument);
  const std::vector<double> ok{1.0, 1.0};
  EXPECT_THROW(gd_step(s, ok, 0.0), std::invalid_argument);
  EXPECT_THROW(adam_step(s, nan, 0.1), std::domain_error);
}

TEST(AdamStep, ZeroGradientLeavesThetaUnchanged) {
  const auto s = adam_step(IterateState::start({3.0}), std::vector<double>{0.0}, 0.1);
  EXPECT_EQ(s.theta[0], 3.0);
}

TEST(AdamStep, FirstStepIsLearningRate) {
  const auto s = adam_step(IterateState::start({0.0}), std::vector<double>{1.0}, 0.1);
  EXPECT_NEAR(s.theta[0], -0.1 / (1.0 + 1e-8), 1e-15);
  const auto big = adam_step(IterateState::start({0.0}), std::vector<double>{-250.0}, 0.1);
  EXPECT_NEAR(big.theta[0], 0.1, 1e-9);
}

TEST(Project, RoundsHalfAwayFromZeroAndClamps) {
  const std::vector<std::int64_t> lo{-5, -5, -5, 0};
  const std::vector<std::int64_t> hi{5, 5, 5, 3};
  const std::vector<double> theta{2.5, -2.5, 9.7, -0.4};
  EXPECT_EQ(project(theta, lo, hi), (std::vector<std::int64_t>{3, -3, 5, 0}));
  const std::vector<double> huge{1e300, -1e300, 0.49, 0.5};
  EXPECT_EQ(project(huge, lo, hi), (std::vector<std::int64_t>{5, -5, 0, 1}));
}

TEST(Run, ZeroStepsGivesInitialPointOnly) {
  const auto m = models::build_model("linear");
  OptimRunConfig cfg;
  cfg.steps = 0;
  Stream rng(1);
  const auto t = run(*m, cfg, {4.0}, rng);
  ASSERT_EQ(t.points.size(), 1u);
  EXPECT_EQ(t.points[0].evaluations, 0u);
  EXPECT_EQ(t.points[0].objective, 12.0);
  EXPECT_TRUE(t.error.empty());
}

TEST(Run, LinearDescendsEveryStep) {
  const auto m = models::build_model("linear");
  OptimRunConfig cfg;
  cfg.steps = 20;
  cfg.learning_rate = 0.05;
  cfg.estimator_cfg = EstimatorConfig{1.0, 15.0, true};
  Stream rng(2);
  const auto t = run(*m, cfg, {10.0}, rng);
  ASSERT_EQ(t.points.size(), 21u);
  for (std::size_t k = 1; k < t.points.size(); ++k) {
    EXPECT_LT(t.points[k].theta[0], t.points[k - 1].theta[0]);
    EXPECT_EQ(t.points[k].evaluations, 2 * k);
  }
}

TEST(Run, ReplaysForFixedSeed) {
  const auto m = models::build_model("dynamnews");
  OptimRunConfig cfg;
  cfg.steps = 5;
  cfg.optimizer = OptimizerKind::adam;
  cfg.learning_rate = 0.3;
  cfg.objective_seed = 77;
  std::vector<double> start(m->dimension(), 4.0);
  Stream a(8);
  Stream b(8);
  const auto ta = run(*m, cfg, start, a);
  const auto tb = run(*m, cfg, start, b);
  ASSERT_EQ(ta.points.size(), tb.points.size());
  for (std::size_t k = 0; k < ta.points.size(); ++k) {
    EXPECT_EQ(ta.points[k].objective, tb.points[k].objective);
    EXPECT_EQ(ta.points[k].theta, tb.points[k].theta);
  }
}

TEST(Run, BudgetLimitsSteps) {
  const auto m = models::build_model("linear");
  OptimRunConfig cfg;
  cfg.steps = 50;
  cfg.evaluation_budget = 7;
  Stream rng(2);
  const auto t = run(*m, cfg, {0.0}, rng);
  EXPECT_EQ(t.points.size(), 4u);
  EXPECT_EQ(t.points.back().evaluations, 6u);
}

TEST(Run, ObjectiveReportingIsSharedAcrossEstimators) {
  const auto m = models::build_model("hotel");
  OptimRunConfig cfg;
  cfg.steps = 0;
  cfg.objective_evaluations = 3;
  cfg.objective_seed = 5;
  const std::vector<double> start(m->dimension(), 2.0);
  Stream a(1);
  Stream b(999);
  cfg.estimator = EstimatorKind::pgo;
  const auto ta = run(*m, cfg, start, a);
  cfg.estimator = EstimatorKind::pgo_dp;
  const auto tb = run(*m, cfg, start, b);
  EXPECT_EQ(ta.points[0].objective, tb.points[0].objective);
}

TEST(Run, ParsesOptimizerNames) {
  EXPECT_EQ(parse_optimizer("adam"), OptimizerKind::adam);
  EXPECT_EQ(to_string(OptimizerKind::gd), "gd");
  EXPECT_THROW(parse_optimizer("sgd"), std::invalid_argument);
}

}  // namespace
}  // namespace peekgrad
