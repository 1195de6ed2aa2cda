// SPDX-License-Identifier: Apache-2.0
#include "peekgrad/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "peekgrad/csv.hpp"
#include "peekgrad/models.hpp"
#include "peekgrad/parallel.hpp"
#include "peekgrad/peek.hpp"

namespace peekgrad::harness {

namespace {

const std::vector<double> kDefaultGdRates{0.01, 0.03, 0.1};
const std::vector<double> kDefaultAdamRates{0.1, 0.3, 1.0};

std::string fmt_size(std::size_t v) { return std::to_string(v); }

std::string fmt_optional(const std::optional<std::size_t>& v) {
  return v ? std::to_string(*v) : std::string("not reached");
}

std::string fmt_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string("not reached");
}

}  // namespace

ExperimentSpec ExperimentSpec::resolve() const {
  ExperimentSpec s = *this;
  const std::string& c = s.command;
  if (c != "verify" && c != "vrr" && c != "bench" && c != "optimize" && c != "oracle") {
    throw std::invalid_argument("unknown command '" + c + "'");
  }
  if (s.sigmas.empty()) s.sigmas = c == "oracle" ? std::vector<double>{1, 2, 4, 8} : std::vector<double>{1};
  if (s.c_factors.empty()) {
    if (c == "optimize") {
      s.c_factors = {3};
    } else if (c == "oracle") {
      s.c_factors = {15};
    } else {
      s.c_factors = {1, 3, 5, 15};
    }
  }
  if (s.reps == 0) {
    if (c == "oracle") {
      s.reps = 100000;
    } else if (c == "bench" || c == "optimize") {
      s.reps = 30;
    } else {
      s.reps = 10000;
    }
  }
  if (s.threads == 0) s.threads = default_thread_count();
  for (double sigma : s.sigmas) DiscreteGaussianSpec{sigma, 0}.validate();
  for (double cf : s.c_factors) EstimatorConfig{s.sigmas.front(), cf, true}.validate();
  if (s.estimators.empty()) throw std::invalid_argument("at least one estimator is required");
  if ((c == "verify" || c == "vrr" || c == "oracle") && s.reps < 2) {
    throw std::invalid_argument(c + ": --reps must be at least 2");
  }
  if (c == "bench" && s.reps < 30) throw std::invalid_argument("bench: --reps must be at least 30");
  if (c == "optimize") {
    if (s.optimizers.empty()) throw std::invalid_argument("optimize: at least one optimizer is required");
    for (double lr : s.learning_rates) {
      if (!(lr > 0.0) || !std::isfinite(lr)) throw std::invalid_argument("optimize: learning rates must be > 0");
    }
    if (s.objective_evaluations < 1) throw std::invalid_argument("optimize: objective evaluations must be >= 1");
  }
  return s;
}

std::shared_ptr<const ObjectiveModel> minimization_model(const ExperimentSpec& spec) {
  std::shared_ptr<const ObjectiveModel> m = models::build_model(spec.model, spec.model_config);
  if (models::is_maximization(spec.model)) return std::make_shared<NegatedModel>(std::move(m));
  return m;
}

// --- verify ----------------------------------------------------------------

std::vector<VerifyRow> verify(const ExperimentSpec& raw) {
  const ExperimentSpec spec = raw.resolve();
  const auto model = minimization_model(spec);
  const auto x = model->reference_point();
  const std::size_t d = model->dimension();

  std::vector<VerifyRow> rows;
  for (double sigma : spec.sigmas) {
    for (double cf : spec.c_factors) {
      const EstimatorConfig cfg{sigma, cf, true};
      VerifyRow row{spec.model, cf, sigma, 0.0, 0.0, 0};
      if (spec.exact) {
        const auto a = expectation_oracle(*model, x, cfg, EstimatorKind::pgo);
        const auto b = expectation_oracle(*model, x, cfg, EstimatorKind::pgo_dp);
        double diff = 0.0;
        for (std::size_t i = 0; i < d; ++i) diff += b.mean[i] - a.mean[i];
        row.mean_diff = diff / static_cast<double>(d);
        row.n = a.evaluations;
      } else {
        const Estimator est(cfg);
        const auto fn = [&](Stream& rng) {
          Stream paired = rng;
          const auto a = est.pgo(*model, x, rng);
          const auto b = est.pgo_dp(*model, x, paired);
          double diff = 0.0;
          for (std::size_t i = 0; i < d; ++i) diff += b.partials[i] - a.partials[i];
          return std::vector<double>{diff / static_cast<double>(d)};
        };
        const auto m = replicate_moments(fn, spec.reps, spec.seed, spec.threads);
        row.mean_diff = m.mean[0];
        row.ci_halfwidth = kZ99 * m.standard_error(0);
        row.n = m.n;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

void write_verify(const std::vector<VerifyRow>& rows, std::ostream& out) {
  CsvWriter w(out);
  w.row({"model", "c_factor", "sigma", "mean_diff", "ci_halfwidth", "n"});
  for (const auto& r : rows) {
    w.row({r.model, format_double(r.c_factor), format_double(r.sigma), format_double(r.mean_diff),
           format_double(r.ci_halfwidth), fmt_size(r.n)});
  }
}

// --- vrr -------------------------------------------------------------------

PairedVariances paired_variances(const ObjectiveModel& model, std::span<const std::int64_t> x,
                                 const EstimatorConfig& cfg, std::size_t reps, std::uint64_t seed,
                                 std::size_t threads) {
  const Estimator est(cfg);
  const std::size_t d = model.dimension();
  const auto fn = [&](Stream& rng) {
    Stream paired = rng;
    auto out = est.pgo(model, x, rng).partials;
    const auto b = est.pgo_dp(model, x, paired);
    out.insert(out.end(), b.partials.begin(), b.partials.end());
    return out;
  };
  const auto m = replicate_moments(fn, reps, seed, threads);
  PairedVariances v;
  v.pgo.assign(m.variance.begin(), m.variance.begin() + static_cast<std::ptrdiff_t>(d));
  v.pgo_dp.assign(m.variance.begin() + static_cast<std::ptrdiff_t>(d), m.variance.end());
  v.n = m.n;
  return v;
}

double mean_vrr(const PairedVariances& v) {
  double sum = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < v.pgo.size(); ++i) {
    if (v.pgo[i] == 0.0 && v.pgo_dp[i] == 0.0) continue;
    if (v.pgo_dp[i] == 0.0) return std::numeric_limits<double>::infinity();
    sum += v.pgo[i] / v.pgo_dp[i];
    ++used;
  }
  return used ? sum / static_cast<double>(used) : std::numeric_limits<double>::quiet_NaN();
}

std::vector<VrrRow> vrr(const ExperimentSpec& raw) {
  const ExperimentSpec spec = raw.resolve();
  const auto model = minimization_model(spec);
  const auto x = model->reference_point();
  std::vector<VrrRow> rows;
  for (double sigma : spec.sigmas) {
    for (double cf : spec.c_factors) {
      const auto v = paired_variances(*model, x, EstimatorConfig{sigma, cf, true}, spec.reps, spec.seed,
                                      spec.threads);
      rows.push_back({spec.model, cf, sigma, mean_vrr(v), v.n});
    }
  }
  return rows;
}

void write_vrr(const std::vector<VrrRow>& rows, std::ostream& out) {
  CsvWriter w(out);
  w.row({"model", "c_factor", "sigma", "vrr", "n"});
  for (const auto& r : rows) {
    w.row({r.model, format_double(r.c_factor), format_double(r.sigma), format_double(r.vrr), fmt_size(r.n)});
  }
}

// --- bench -----------------------------------------------------------------

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

/// Smallest observable increment of the clock.
double clock_resolution() {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 20; ++k) {
    const auto t0 = Clock::now();
    auto t1 = Clock::now();
    while (t1 == t0) t1 = Clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

double time_batch(const std::function<void()>& f, std::size_t batch) {
  const auto t0 = Clock::now();
  for (std::size_t k = 0; k < batch; ++k) f();
  return seconds_since(t0);
}

/// Linear-interpolated quantile of sorted data.
double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

TimingRatio time_ratio(const std::function<void()>& a, const std::function<void()>& b, std::size_t reps,
                       std::size_t batch) {
  if (reps < 1 || batch < 1) throw std::invalid_argument("time_ratio: reps and batch must be >= 1");
  const double resolution = clock_resolution();
  time_batch(a, batch);
  time_batch(b, batch);

  TimingRatio r;
  r.samples.reserve(reps);
  for (std::size_t k = 0; k < reps; ++k) {
    const double ta = time_batch(a, batch);
    const double tb = time_batch(b, batch);
    if (ta < 100.0 * resolution || tb < 100.0 * resolution) {
      throw std::runtime_error("bench: a batch of " + std::to_string(batch) +
                               " evaluations is too short for the clock resolution; use a larger batch");
    }
    r.samples.push_back(tb / ta);
  }
  std::vector<double> sorted = r.samples;
  std::sort(sorted.begin(), sorted.end());
  r.median = quantile(sorted, 0.5);
  r.iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);
  return r;
}

std::vector<BenchRow> bench(const ExperimentSpec& raw) {
  const ExperimentSpec spec = raw.resolve();
  const auto model = minimization_model(spec);
  const auto x = model->reference_point();
  const std::size_t d = model->dimension();
  const double sigma = spec.sigmas.front();

  std::vector<BenchRow> rows;
  for (double cf : spec.c_factors) {
    const Estimator est(EstimatorConfig{sigma, cf, true});
    Stream draw_rng(derive_seed(spec.seed, 0));
    const auto r = est.sample_draw(d, draw_rng);
    const std::uint64_t model_seed = derive_seed(spec.seed, 1);

    std::vector<double> shifted(d);
    for (std::size_t i = 0; i < d; ++i) shifted[i] = static_cast<double>(x[i] + r[i]);
    volatile double sink = 0.0;
    const std::function<void()> scalar = [&] {
      Stream s(model_seed);
      sink = model->evaluate(std::span<const double>(shifted), s);
    };
    const std::int64_t radius = est.config().radius();
    const std::function<void()> peeked = [&] {
      PeekContext ctx(x, r, radius);
      std::vector<PeekScalar> in;
      in.reserve(d);
      for (std::size_t i = 0; i < d; ++i) in.push_back(PeekScalar::lift(ctx, i));
      Stream s(model_seed);
      sink = model->evaluate(std::span<const PeekScalar>(in), s).primal();
    };

    std::size_t batch = spec.bench_batch;
    if (batch == 0) {
      batch = 1;
      while (time_batch(scalar, batch) < 2e-3 && batch < (std::size_t{1} << 24)) batch *= 2;
    }
    const auto t = time_ratio(scalar, peeked, spec.reps, batch);
    rows.push_back({spec.model, cf, t.median, t.iqr});
  }
  return rows;
}

void write_bench(const std::vector<BenchRow>& rows, std::ostream& out) {
  CsvWriter w(out);
  w.row({"model", "c_factor", "slowdown_median", "slowdown_iqr"});
  for (const auto& r : rows) {
    w.row({r.model, format_double(r.c_factor), format_double(r.slowdown_median), format_double(r.slowdown_iqr)});
  }
}

// --- optimize --------------------------------------------------------------

double trapezoid_auc(const std::vector<CurvePoint>& points) {
  if (points.empty()) return std::numeric_limits<double>::quiet_NaN();
  double area = 0.0;
  for (std::size_t k = 1; k < points.size(); ++k) {
    const double w = static_cast<double>(points[k].evaluations - points[k - 1].evaluations);
    area += 0.5 * w * (points[k].objective_mean + points[k - 1].objective_mean);
  }
  return area;
}

std::optional<std::size_t> first_reaching(const std::vector<CurvePoint>& points, double start, double best,
                                          double threshold) {
  const double span = best - start;
  if (span == 0.0 || !std::isfinite(span)) return std::nullopt;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if ((points[k].objective_mean - start) / span >= threshold - 1e-12) return k;
  }
  return std::nullopt;
}

namespace {

std::vector<OptimizeConfig> expand_configs(const ExperimentSpec& spec) {
  std::vector<OptimizeConfig> out;
  for (EstimatorKind kind : spec.estimators) {
    const std::vector<double> cfs = kind == EstimatorKind::pgo ? std::vector<double>{0.0} : spec.c_factors;
    for (double sigma : spec.sigmas) {
      for (double cf : cfs) {
        for (OptimizerKind opt : spec.optimizers) {
          const auto& rates = !spec.learning_rates.empty() ? spec.learning_rates
                              : opt == OptimizerKind::gd  ? kDefaultGdRates
                                                          : kDefaultAdamRates;
          for (double lr : rates) out.push_back({kind, opt, lr, sigma, cf});
        }
      }
    }
  }
  return out;
}

std::vector<double> random_start(const ObjectiveModel& model, Stream& rng) {
  const auto lo = model.lower_bounds();
  const auto hi = model.upper_bounds();
  std::vector<double> theta(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) {
    std::uniform_int_distribution<std::int64_t> u(lo[i], hi[i]);
    theta[i] = static_cast<double>(u(rng));
  }
  return theta;
}

ConfigCurve summarize(const OptimizeConfig& cfg, const std::vector<Trajectory>& runs, bool maximize) {
  ConfigCurve curve;
  curve.config = cfg;
  const double sign = maximize ? -1.0 : 1.0;
  std::size_t length = std::numeric_limits<std::size_t>::max();
  for (const auto& t : runs) {
    if (!t.error.empty()) {
      ++curve.failed;
      continue;
    }
    length = std::min(length, t.points.size());
  }
  if (curve.failed == runs.size()) {
    curve.auc = std::numeric_limits<double>::quiet_NaN();
    return curve;
  }
  for (std::size_t k = 0; k < length; ++k) {
    double sum = 0.0;
    double sq = 0.0;
    double elapsed = 0.0;
    std::size_t n = 0;
    CurvePoint p;
    for (const auto& t : runs) {
      if (!t.error.empty()) continue;
      const auto& pt = t.points[k];
      const double y = sign * pt.objective;
      sum += y;
      sq += y * y;
      elapsed += pt.elapsed_seconds;
      p.step = pt.step;
      p.evaluations = pt.evaluations;
      ++n;
    }
    const double nd = static_cast<double>(n);
    p.objective_mean = sum / nd;
    p.elapsed_mean = elapsed / nd;
    p.n = n;
    if (n > 1) {
      const double var = std::max(0.0, (sq - sum * sum / nd) / (nd - 1.0));
      p.objective_ci = kZ99 * std::sqrt(var / nd);
    }
    curve.points.push_back(p);
  }
  curve.auc = trapezoid_auc(curve.points);
  return curve;
}

std::optional<std::size_t> select_best(std::vector<ConfigCurve>& curves, EstimatorKind kind, bool maximize) {
  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < curves.size(); ++k) {
    if (curves[k].config.estimator != kind || std::isnan(curves[k].auc)) continue;
    if (!best) {
      best = k;
      continue;
    }
    const double a = curves[k].auc;
    const double b = curves[*best].auc;
    if (maximize ? a > b : a < b) best = k;
  }
  if (best) curves[*best].selected = true;
  return best;
}

}  // namespace

OptimizeResult optimize(const ExperimentSpec& raw) {
  const ExperimentSpec spec = raw.resolve();
  const auto model = minimization_model(spec);
  OptimizeResult result;
  result.maximize = models::is_maximization(spec.model);

  const std::uint64_t start_seed = derive_seed(spec.seed, 1);
  const std::uint64_t estimator_seed = derive_seed(spec.seed, 2);
  const std::uint64_t objective_seed = derive_seed(spec.seed, 3);

  for (const auto& cfg : expand_configs(spec)) {
    OptimRunConfig run_cfg;
    run_cfg.optimizer = cfg.optimizer;
    run_cfg.learning_rate = cfg.learning_rate;
    run_cfg.estimator = cfg.estimator;
    run_cfg.estimator_cfg = EstimatorConfig{cfg.sigma, cfg.c_factor, true};
    run_cfg.steps = spec.steps;
    run_cfg.evaluation_budget = spec.evaluation_budget;
    run_cfg.objective_evaluations = spec.objective_evaluations;

    std::vector<Trajectory> runs(spec.reps);
    parallel_for(spec.reps, spec.threads, [&](std::size_t r) {
      Stream start_rng(derive_seed(start_seed, r));
      Stream rng(derive_seed(estimator_seed, r));
      OptimRunConfig local = run_cfg;
      local.objective_seed = derive_seed(objective_seed, r);
      runs[r] = run(*model, local, random_start(*model, start_rng), rng);
    });
    result.curves.push_back(summarize(cfg, runs, result.maximize));
  }

  const auto dp = select_best(result.curves, EstimatorKind::pgo_dp, result.maximize);
  const auto pgo = select_best(result.curves, EstimatorKind::pgo, result.maximize);
  if (dp && pgo) {
    const auto& ref = result.curves[*dp].points;
    const auto& other = result.curves[*pgo].points;
    ImprovementReport rep;
    rep.start_objective = ref.front().objective_mean;
    rep.best_objective = ref.front().objective_mean;
    for (const auto& p : ref) {
      rep.best_objective = result.maximize ? std::max(rep.best_objective, p.objective_mean)
                                           : std::min(rep.best_objective, p.objective_mean);
    }
    for (double level : {0.75, 0.90, 0.95, 0.99}) {
      ThresholdResult t;
      t.threshold = level;
      if (const auto k = first_reaching(ref, rep.start_objective, rep.best_objective, level)) {
        t.pgo_dp_evaluations = ref[*k].evaluations;
        t.pgo_dp_seconds = ref[*k].elapsed_mean;
      }
      if (const auto k = first_reaching(other, rep.start_objective, rep.best_objective, level)) {
        t.pgo_evaluations = other[*k].evaluations;
        t.pgo_seconds = other[*k].elapsed_mean;
      }
      if (t.pgo_dp_evaluations && t.pgo_evaluations && *t.pgo_dp_evaluations > 0) {
        t.speedup = static_cast<double>(*t.pgo_evaluations) / static_cast<double>(*t.pgo_dp_evaluations);
      }
      rep.thresholds.push_back(t);
    }
    result.report = rep;
  }
  return result;
}

namespace {

CsvRow config_fields(const OptimizeConfig& c) {
  return {to_string(c.estimator), to_string(c.optimizer), format_double(c.learning_rate), format_double(c.sigma),
          format_double(c.c_factor)};
}

}  // namespace

void write_trajectories(const OptimizeResult& r, bool wall_clock, std::ostream& out) {
  CsvWriter w(out);
  CsvRow header{"estimator", "optimizer", "learning_rate", "sigma", "c_factor", "step",
                "evaluations", "objective_mean", "objective_ci", "n"};
  if (wall_clock) header.push_back("elapsed_mean");
  w.row(header);
  for (const auto& c : r.curves) {
    for (const auto& p : c.points) {
      CsvRow row = config_fields(c.config);
      row.insert(row.end(), {fmt_size(p.step), fmt_size(p.evaluations), format_double(p.objective_mean),
                             format_double(p.objective_ci), fmt_size(p.n)});
      if (wall_clock) row.push_back(format_double(p.elapsed_mean));
      w.row(row);
    }
  }
}

void write_auc(const OptimizeResult& r, std::ostream& out) {
  CsvWriter w(out);
  w.row({"estimator", "optimizer", "learning_rate", "sigma", "c_factor", "auc", "final_mean", "final_ci", "failed",
         "selected"});
  for (const auto& c : r.curves) {
    CsvRow row = config_fields(c.config);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    row.insert(row.end(), {format_double(c.auc), format_double(c.points.empty() ? nan : c.points.back().objective_mean),
                           format_double(c.points.empty() ? nan : c.points.back().objective_ci),
                           fmt_size(c.failed), c.selected ? "1" : "0"});
    w.row(row);
  }
}

void write_improvement(const OptimizeResult& r, bool wall_clock, std::ostream& out) {
  CsvWriter w(out);
  CsvRow header{"threshold", "start_objective", "best_objective", "pgo_dp_evaluations", "pgo_evaluations",
                "speedup"};
  if (wall_clock) header.insert(header.end(), {"pgo_dp_seconds", "pgo_seconds"});
  w.row(header);
  if (!r.report) return;
  for (const auto& t : r.report->thresholds) {
    CsvRow row{format_double(t.threshold), format_double(r.report->start_objective),
               format_double(r.report->best_objective), fmt_optional(t.pgo_dp_evaluations),
               fmt_optional(t.pgo_evaluations), fmt_optional(t.speedup)};
    if (wall_clock) row.insert(row.end(), {fmt_optional(t.pgo_dp_seconds), fmt_optional(t.pgo_seconds)});
    w.row(row);
  }
}

// --- oracle ----------------------------------------------------------------

std::vector<OracleRow> oracle(const ExperimentSpec& raw) {
  const ExperimentSpec spec = raw.resolve();
  const auto model = models::build_model("heaviside");
  const std::vector<std::int64_t> x{0};
  std::vector<OracleRow> rows;
  for (double sigma : spec.sigmas) {
    OracleRow row;
    row.analytic = heaviside_vrr(sigma);
    const auto v = paired_variances(*model, x, EstimatorConfig{sigma, spec.c_factors.front(), true}, spec.reps,
                                    spec.seed, spec.threads);
    row.measured_vrr = mean_vrr(v);
    row.n = v.n;
    rows.push_back(row);
  }
  return rows;
}

void write_oracle(const std::vector<OracleRow>& rows, std::ostream& out) {
  CsvWriter w(out);
  w.row({"sigma", "p", "exp_in_class_var", "var_across_means", "vrr_analytic", "vrr_measured", "n"});
  for (const auto& r : rows) {
    const auto& a = r.analytic;
    w.row({format_double(a.sigma), format_double(a.p), format_double(a.normalized_in_class_var()),
           format_double(a.normalized_across_means()), format_double(a.vrr), format_double(r.measured_vrr),
           fmt_size(r.n)});
  }
}

// ---------------------------------------------------------------------------

namespace {

class Output {
 public:
  explicit Output(const std::string& path) : path_(path) {
    if (to_stdout()) return;
    file_.open(path, std::ios::out | std::ios::binary | std::ios::trunc);
    if (!file_) throw std::runtime_error("cannot open '" + path + "' for writing");
  }

  bool to_stdout() const { return path_.empty() || path_ == "-"; }
  std::ostream& stream() { return to_stdout() ? std::cout : file_; }

  void close() {
    stream().flush();
    if (to_stdout()) return;
    file_.close();
    if (!file_) throw std::runtime_error("error writing '" + path_ + "'");
  }

 private:
  std::string path_;
  std::ofstream file_;
};

}  // namespace

void run_command(const ExperimentSpec& raw) {
  const ExperimentSpec spec = raw.resolve();
  if (spec.command == "optimize") {
    const auto result = optimize(spec);
    Output main(spec.out);
    write_trajectories(result, spec.wall_clock, main.stream());
    if (main.to_stdout()) {
      std::cout << '\n';
      write_auc(result, std::cout);
      std::cout << '\n';
      write_improvement(result, spec.wall_clock, std::cout);
      main.close();
      return;
    }
    main.close();
    Output auc(spec.out + ".auc.csv");
    write_auc(result, auc.stream());
    auc.close();
    Output imp(spec.out + ".improvement.csv");
    write_improvement(result, spec.wall_clock, imp.stream());
    imp.close();
    return;
  }

  Output out(spec.out);
  if (spec.command == "verify") {
    write_verify(verify(spec), out.stream());
  } else if (spec.command == "vrr") {
    write_vrr(vrr(spec), out.stream());
  } else if (spec.command == "bench") {
    write_bench(bench(spec), out.stream());
  } else {
    write_oracle(oracle(spec), out.stream());
  }
  out.close();
}

}  // namespace peekgrad::harness
