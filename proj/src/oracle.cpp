// SPDX-License-Identifier: Apache-2.0
#include "peekgrad/oracle.hpp"

#include "peekgrad/dgauss.hpp"

namespace peekgrad {

HeavisideOracleResult heaviside_vrr(double sigma, std::int64_t trunc) {
  const DiscreteGaussian law(DiscreteGaussianSpec{sigma, trunc});
  const std::int64_t t = law.trunc();

  // Smallest terms first.
  double p = 0.0;
  double first = 0.0;
  double second = 0.0;
  for (std::int64_t k = t; k >= 1; --k) {
    const double w = law.pmf(-k);
    const auto kd = static_cast<double>(k);
    p += w;
    first += w * kd;
    second += w * kd * kd;
  }

  HeavisideOracleResult r;
  r.sigma = sigma;
  r.p = p;
  r.q = 1.0 - p;
  r.mu_neg = first / p;
  r.var_neg = second / p - r.mu_neg * r.mu_neg;
  r.exp_in_class_var = p * r.var_neg;
  r.var_across_means = p * r.q * r.mu_neg * r.mu_neg;
  r.var_pgo = r.exp_in_class_var + r.var_across_means;
  r.vrr = 1.0 + r.exp_in_class_var / r.var_across_means;
  return r;
}

}  // namespace peekgrad
