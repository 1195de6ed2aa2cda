// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace peekgrad {

/// Closed-form variance split of PGO on the unit step H(x) at x = 0.
///
/// The negative class {R < 0} flips the step and the nonnegative class does
/// not, so PGO's variance splits into an in-class term (removed by peeking)
/// and the variance of the class means (kept). Variance fields are in units
/// of the raw offset k; divide by sigma^2 for the normalized scale.
struct HeavisideOracleResult {
  double sigma = 0.0;
  double p = 0.0;  // P(R < 0)
  double q = 0.0;  // 1 - p
  double mu_neg = 0.0;
  double var_neg = 0.0;
  double exp_in_class_var = 0.0;  // p * var_neg
  double var_across_means = 0.0;  // p * q * mu_neg^2
  double var_pgo = 0.0;
  double vrr = 0.0;

  double normalized_in_class_var() const { return exp_in_class_var / (sigma * sigma); }
  double normalized_across_means() const { return var_across_means / (sigma * sigma); }
};

/// Uses rounded-Gaussian weights summed over |k| <= trunc; trunc = 0 selects
/// ceil(15 sigma). Throws std::invalid_argument for sigma <= 0.
HeavisideOracleResult heaviside_vrr(double sigma, std::int64_t trunc = 0);

}  // namespace peekgrad
