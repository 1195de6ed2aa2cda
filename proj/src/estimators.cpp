// SPDX-License-Identifier: Apache-2.0
#include "peekgrad/estimators.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "peekgrad/parallel.hpp"
#include "peekgrad/peek.hpp"

namespace peekgrad {

std::string to_string(EstimatorKind kind) { return kind == EstimatorKind::pgo ? "pgo" : "pgo_dp"; }

EstimatorKind parse_estimator(std::string_view name) {
  if (name == "pgo") return EstimatorKind::pgo;
  if (name == "pgo_dp" || name == "pgo-dp") return EstimatorKind::pgo_dp;
  throw std::invalid_argument("unknown estimator '" + std::string(name) + "'");
}

std::int64_t EstimatorConfig::radius() const {
  return static_cast<std::int64_t>(std::ceil(c_factor * sigma));
}

void EstimatorConfig::validate() const {
  DiscreteGaussianSpec{sigma, 0}.validate();
  if (!std::isfinite(c_factor) || c_factor < 0.0) {
    throw std::invalid_argument("estimator config: c_factor must be finite and >= 0");
  }
}

Estimator::Estimator(EstimatorConfig cfg) : cfg_(cfg), law_((cfg.validate(), DiscreteGaussianSpec{cfg.sigma, 0})) {}

std::vector<std::int64_t> Estimator::sample_draw(std::size_t d, Stream& rng) const {
  std::vector<std::int64_t> r(d);
  for (auto& v : r) v = law_.sample(rng);
  return r;
}

StreamSeeds Estimator::sample_seeds(Stream& rng) const {
  StreamSeeds s;
  s.perturbed = rng();
  const auto independent = rng();
  s.baseline = cfg_.common_random_numbers ? s.perturbed : independent;
  return s;
}

GradientEstimate Estimator::estimate(EstimatorKind kind, const ObjectiveModel& model,
                                     std::span<const std::int64_t> x, Stream& rng) const {
  const auto r = sample_draw(model.dimension(), rng);
  const auto seeds = sample_seeds(rng);
  return estimate_with(kind, model, x, r, seeds);
}

GradientEstimate Estimator::estimate_with(EstimatorKind kind, const ObjectiveModel& model,
                                          std::span<const std::int64_t> x, std::span<const std::int64_t> r,
                                          StreamSeeds seeds) const {
  return kind == EstimatorKind::pgo ? pgo_with(model, x, r, seeds) : pgo_dp_with(model, x, r, seeds);
}

namespace {

void check_shapes(const ObjectiveModel& model, std::span<const std::int64_t> x, std::span<const std::int64_t> r) {
  if (x.size() != model.dimension() || r.size() != model.dimension()) {
    throw std::invalid_argument("estimator: input and draw must match the model dimension");
  }
}

}  // namespace

GradientEstimate Estimator::pgo_with(const ObjectiveModel& model, std::span<const std::int64_t> x,
                                     std::span<const std::int64_t> r, StreamSeeds seeds) const {
  check_shapes(model, x, r);
  const std::size_t d = x.size();
  std::vector<double> shifted(d);
  for (std::size_t i = 0; i < d; ++i) shifted[i] = static_cast<double>(x[i] + r[i]);

  GradientEstimate est;
  Stream perturbed(seeds.perturbed);
  est.y1 = model.evaluate(std::span<const double>(shifted), perturbed);
  Stream baseline(seeds.baseline);
  est.y0 = model.evaluate_at(x, baseline);

  const double inv_var = 1.0 / (cfg_.sigma * cfg_.sigma);
  est.partials.resize(d);
  est.peeked.assign(d, 0);
  est.draw.assign(r.begin(), r.end());
  for (std::size_t i = 0; i < d; ++i) {
    est.partials[i] = (est.y1 - est.y0) * static_cast<double>(r[i]) * inv_var;
  }
  return est;
}

GradientEstimate Estimator::pgo_dp_with(const ObjectiveModel& model, std::span<const std::int64_t> x,
                                        std::span<const std::int64_t> r, StreamSeeds seeds) const {
  check_shapes(model, x, r);
  const std::size_t d = x.size();
  const std::int64_t c = cfg_.radius();

  PeekContext ctx(x, r, c);
  std::vector<PeekScalar> inputs;
  inputs.reserve(d);
  for (std::size_t i = 0; i < d; ++i) inputs.push_back(PeekScalar::lift(ctx, i));

  GradientEstimate est;
  Stream perturbed(seeds.perturbed);
  const PeekScalar out = model.evaluate(std::span<const PeekScalar>(inputs), perturbed);
  Stream baseline(seeds.baseline);
  est.y0 = model.evaluate_at(x, baseline);
  est.y1 = out.primal();

  const double inv_var = 1.0 / (cfg_.sigma * cfg_.sigma);
  est.partials.resize(d);
  est.peeked.resize(d);
  est.draw.assign(r.begin(), r.end());
  for (std::size_t i = 0; i < d; ++i) {
    if (!ctx.peeked(i)) {
      est.peeked[i] = 0;
      est.partials[i] = (est.y1 - est.y0) * static_cast<double>(r[i]) * inv_var;
      continue;
    }
    est.peeked[i] = 1;
    const auto row = out.find_row(i);
    const auto mask = ctx.mask(i);
    // Ascending offsets, matching mass().
    double weighted = 0.0;
    double covered = 0.0;
    for (std::size_t slot = 0; slot < ctx.width(); ++slot) {
      if (!mask[slot]) continue;
      const std::int64_t o = static_cast<std::int64_t>(slot) - c;
      const double p = law_.pmf(o);
      const double v = row.empty() ? est.y1 : row[slot];
      weighted += p * (v - est.y0) * static_cast<double>(o);
      covered += p;
    }
    est.partials[i] = weighted * inv_var / covered;
  }
  return est;
}

// ---------------------------------------------------------------------------

ExactMoments expectation_oracle(const ObjectiveModel& model, std::span<const std::int64_t> x,
                                const EstimatorConfig& cfg, EstimatorKind kind, std::int64_t trunc,
                                std::size_t budget) {
  if (model.stochastic()) throw std::invalid_argument("expectation_oracle: model must be deterministic");
  const Estimator est(cfg);
  const std::int64_t t = trunc > 0 ? trunc : est.law().trunc();
  const std::size_t d = model.dimension();
  const auto side = static_cast<std::size_t>(2 * t + 1);
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (total > budget / side) {
      throw std::length_error("expectation_oracle: enumeration of (2T+1)^d points exceeds budget");
    }
    total *= side;
  }

  // Weighted Welford accumulation over the odometer.
  std::vector<std::int64_t> r(d, -t);
  std::vector<double> mean(d, 0.0);
  std::vector<double> m2(d, 0.0);
  double weight_sum = 0.0;
  for (std::size_t n = 0; n < total; ++n) {
    double w = 1.0;
    for (std::size_t i = 0; i < d; ++i) w *= est.law().pmf(r[i]);
    const auto g = est.estimate_with(kind, model, x, r, StreamSeeds{});
    if (w > 0.0) {
      weight_sum += w;
      for (std::size_t i = 0; i < d; ++i) {
        const double delta = g.partials[i] - mean[i];
        mean[i] += (w / weight_sum) * delta;
        m2[i] += w * delta * (g.partials[i] - mean[i]);
      }
    }
    for (std::size_t i = 0; i < d; ++i) {
      if (++r[i] <= t) break;
      r[i] = -t;
    }
  }

  ExactMoments out;
  out.mean = mean;
  out.variance.resize(d);
  for (std::size_t i = 0; i < d; ++i) out.variance[i] = m2[i] / weight_sum;
  out.evaluations = total;
  return out;
}

// ---------------------------------------------------------------------------

double SampleMoments::standard_error(std::size_t i) const {
  return n > 0 ? std::sqrt(variance.at(i) / static_cast<double>(n)) : std::numeric_limits<double>::quiet_NaN();
}

namespace {

struct Accumulator {
  std::size_t n = 0;
  std::vector<double> mean;
  std::vector<double> m2;

  void add(const std::vector<double>& v) {
    if (mean.empty()) {
      mean.assign(v.size(), 0.0);
      m2.assign(v.size(), 0.0);
    }
    if (v.size() != mean.size()) throw std::invalid_argument("moments: estimate length changed");
    ++n;
    const double inv = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double delta = v[i] - mean[i];
      mean[i] += delta * inv;
      m2[i] += delta * (v[i] - mean[i]);
    }
  }

  // Chan et al. pairwise combination.
  void merge(const Accumulator& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    if (o.mean.size() != mean.size()) throw std::invalid_argument("moments: estimate length changed");
    const double na = static_cast<double>(n);
    const double nb = static_cast<double>(o.n);
    const double nt = na + nb;
    for (std::size_t i = 0; i < mean.size(); ++i) {
      const double delta = o.mean[i] - mean[i];
      mean[i] += delta * nb / nt;
      m2[i] += o.m2[i] + delta * delta * na * nb / nt;
    }
    n += o.n;
  }

  SampleMoments finish() const {
    SampleMoments s;
    s.n = n;
    s.mean = mean;
    s.variance.resize(m2.size());
    for (std::size_t i = 0; i < m2.size(); ++i) {
      s.variance[i] = n > 1 ? m2[i] / static_cast<double>(n - 1) : 0.0;
    }
    return s;
  }
};

constexpr std::size_t kChunk = 256;

}  // namespace

SampleMoments moments(const EstimateFn& fn, std::size_t n, Stream& rng) {
  if (n < 2) throw std::invalid_argument("moments: need at least two replications");
  Accumulator acc;
  for (std::size_t k = 0; k < n; ++k) acc.add(fn(rng));
  return acc.finish();
}

SampleMoments replicate_moments(const EstimateFn& fn, std::size_t n, std::uint64_t seed, std::size_t threads) {
  if (n < 2) throw std::invalid_argument("moments: need at least two replications");
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<Accumulator> partial(chunks);
  parallel_for(chunks, threads, [&](std::size_t c) {
    const std::size_t end = std::min(n, (c + 1) * kChunk);
    for (std::size_t k = c * kChunk; k < end; ++k) {
      Stream rng(derive_seed(seed, k));
      partial[c].add(fn(rng));
    }
  });
  Accumulator total;
  for (const auto& p : partial) total.merge(p);
  return total.finish();
}

}  // namespace peekgrad
