// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "peekgrad/estimators.hpp"
#include "peekgrad/models.hpp"
#include "peekgrad/oracle.hpp"

namespace peekgrad {
namespace {

TEST(HeavisideOracle, UnitScale) {
  const auto r = heaviside_vrr(1.0);
  EXPECT_NEAR(r.p, 0.308538, 5e-7);
  EXPECT_NEAR(r.exp_in_class_var, 0.069, 5e-4);
  EXPECT_NEAR(r.var_across_means, 0.327, 5e-4);
  EXPECT_NEAR(r.vrr, 1.212, 5e-4);
  EXPECT_NEAR(r.mu_neg, 1.2374197729, 1e-9);
}

TEST(HeavisideOracle, LargerScales) {
  EXPECT_NEAR(heaviside_vrr(2.0).vrr, 1.525, 5e-4);
  EXPECT_NEAR(heaviside_vrr(4.0).vrr, 1.781, 5e-4);
  EXPECT_NEAR(heaviside_vrr(8.0).vrr, 1.946, 5e-4);
  const auto r = heaviside_vrr(2.0);
  EXPECT_NEAR(r.normalized_in_class_var(), 0.1220924, 1e-7);
  EXPECT_NEAR(r.normalized_across_means(), 0.2324922, 1e-7);
}

TEST(HeavisideOracle, Invariants) {
  double previous = 1.0;
  for (double sigma : {1.0, 2.0, 4.0, 8.0}) {
    const auto r = heaviside_vrr(sigma);
    EXPECT_DOUBLE_EQ(r.p + r.q, 1.0);
    EXPECT_DOUBLE_EQ(r.var_pgo, r.exp_in_class_var + r.var_across_means);
    EXPECT_GE(r.vrr, 1.0);
    EXPECT_GT(r.vrr, previous);
    previous = r.vrr;
  }
  EXPECT_THROW(heaviside_vrr(0.0), std::invalid_argument);
}

TEST(HeavisideOracle, AgreesWithEnumeratedEstimatorVariances) {
  const auto m = models::build_model("heaviside");
  const std::vector<std::int64_t> x{0};
  for (double sigma : {1.0, 2.0, 4.0}) {
    const auto r = heaviside_vrr(sigma);
    const EstimatorConfig cfg{sigma, 15.0, true};
    const auto a = expectation_oracle(*m, x, cfg, EstimatorKind::pgo);
    const auto b = expectation_oracle(*m, x, cfg, EstimatorKind::pgo_dp);
    const double s2 = sigma * sigma;
    // The estimators carry an extra 1/sigma^2 relative to the normalized table scale.
    EXPECT_NEAR(a.variance[0] * s2, r.var_pgo / s2, 1e-6);
    EXPECT_NEAR(b.variance[0] * s2, r.var_across_means / s2, 1e-6);
    EXPECT_NEAR(a.variance[0] / b.variance[0], r.vrr, 1e-9);
  }
}

}  // namespace
}  // namespace peekgrad
