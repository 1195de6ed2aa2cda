// SPDX-License-Identifier: Apache-2.0
#pragma once

// Experiment drivers behind the `peekgrad` command-line tool. Each command
// has a compute step returning typed rows and a writer emitting CSV.
//
// Replication k of any Monte-Carlo experiment runs on
// Stream(derive_seed(seed, k)), so results do not depend on the number of
// worker threads.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "peekgrad/estimators.hpp"
#include "peekgrad/keyvalue.hpp"
#include "peekgrad/model.hpp"
#include "peekgrad/optim.hpp"
#include "peekgrad/oracle.hpp"

namespace peekgrad::harness {

struct ExperimentSpec {
  std::string command;  // verify | vrr | bench | optimize | oracle
  std::string model = "heaviside";
  std::vector<EstimatorKind> estimators{EstimatorKind::pgo, EstimatorKind::pgo_dp};
  /// Empty lists and zero counts select the command's defaults (see resolve()).
  std::vector<double> sigmas;
  std::vector<double> c_factors;
  std::size_t reps = 0;
  std::uint64_t seed = 1;
  std::string out;  // empty or "-" writes to stdout
  KeyValues model_config;
  std::size_t threads = 1;

  // verify
  bool exact = false;

  // bench
  std::size_t bench_batch = 0;

  // optimize
  std::vector<OptimizerKind> optimizers{OptimizerKind::gd, OptimizerKind::adam};
  std::vector<double> learning_rates;  // empty: per-optimizer defaults
  std::size_t steps = 100;
  std::size_t evaluation_budget = 0;
  std::size_t objective_evaluations = 1;
  bool wall_clock = false;

  /// Copy with command defaults filled in. Throws std::invalid_argument on
  /// an unknown command or invalid values.
  ExperimentSpec resolve() const;
};

/// Model as minimized by the estimators (maximization models are negated).
std::shared_ptr<const ObjectiveModel> minimization_model(const ExperimentSpec& spec);

// --- verify ----------------------------------------------------------------

struct VerifyRow {
  std::string model;
  double c_factor = 0.0;
  double sigma = 0.0;
  double mean_diff = 0.0;
  double ci_halfwidth = 0.0;
  std::size_t n = 0;
};

/// Two-sided 99% normal quantile.
inline constexpr double kZ99 = 2.5758293035489004;

std::vector<VerifyRow> verify(const ExperimentSpec& spec);
void write_verify(const std::vector<VerifyRow>& rows, std::ostream& out);

// --- vrr -------------------------------------------------------------------

struct PairedVariances {
  std::vector<double> pgo;
  std::vector<double> pgo_dp;
  std::size_t n = 0;
};

/// Sample variances of PGO and PGO-DP partials from paired estimates that
/// share R and the model streams.
PairedVariances paired_variances(const ObjectiveModel& model, std::span<const std::int64_t> x,
                                 const EstimatorConfig& cfg, std::size_t reps, std::uint64_t seed,
                                 std::size_t threads);

/// Mean over dimensions of var_pgo / var_dp. Dimensions where both are zero
/// are skipped; a zero PGO-DP variance against a positive PGO variance gives
/// +inf. Returns NaN when every dimension is skipped.
double mean_vrr(const PairedVariances& v);

struct VrrRow {
  std::string model;
  double c_factor = 0.0;
  double sigma = 0.0;
  double vrr = 0.0;
  std::size_t n = 0;
};

std::vector<VrrRow> vrr(const ExperimentSpec& spec);
void write_vrr(const std::vector<VrrRow>& rows, std::ostream& out);

// --- bench -----------------------------------------------------------------

struct TimingRatio {
  double median = 0.0;
  double iqr = 0.0;
  std::vector<double> samples;
};

/// Times `batch` calls of each function per repetition, after one warmup
/// repetition, and reports statistics of time(b) / time(a). Throws
/// std::runtime_error when a batch is too short for the clock.
TimingRatio time_ratio(const std::function<void()>& a, const std::function<void()>& b, std::size_t reps,
                       std::size_t batch);

struct BenchRow {
  std::string model;
  double c_factor = 0.0;
  double slowdown_median = 0.0;
  double slowdown_iqr = 0.0;
};

std::vector<BenchRow> bench(const ExperimentSpec& spec);
void write_bench(const std::vector<BenchRow>& rows, std::ostream& out);

// --- optimize --------------------------------------------------------------

struct OptimizeConfig {
  EstimatorKind estimator = EstimatorKind::pgo_dp;
  OptimizerKind optimizer = OptimizerKind::gd;
  double learning_rate = 0.0;
  double sigma = 1.0;
  double c_factor = 0.0;  // 0 for PGO
};

struct CurvePoint {
  std::size_t step = 0;
  std::size_t evaluations = 0;
  double objective_mean = 0.0;  // in the model's own sense (revenue is maximized)
  double objective_ci = 0.0;    // 99% half-width
  double elapsed_mean = 0.0;
  std::size_t n = 0;
};

struct ConfigCurve {
  OptimizeConfig config;
  std::vector<CurvePoint> points;
  double auc = 0.0;  // trapezoidal over evaluations
  std::size_t failed = 0;
  bool selected = false;
};

struct ThresholdResult {
  double threshold = 0.0;
  std::optional<std::size_t> pgo_dp_evaluations;
  std::optional<std::size_t> pgo_evaluations;
  std::optional<double> pgo_dp_seconds;
  std::optional<double> pgo_seconds;
  /// pgo / pgo_dp evaluations when both reached the level.
  std::optional<double> speedup;
};

struct ImprovementReport {
  double start_objective = 0.0;
  double best_objective = 0.0;
  std::vector<ThresholdResult> thresholds;
};

struct OptimizeResult {
  bool maximize = false;
  std::vector<ConfigCurve> curves;
  std::optional<ImprovementReport> report;  // needs both estimators
};

/// Trapezoidal area under (evaluations, objective_mean).
double trapezoid_auc(const std::vector<CurvePoint>& points);

/// Index of the first point whose share (y - start) / (best - start) of the
/// total improvement is at least `threshold`. Works for either direction;
/// nullopt when never reached or when best == start.
std::optional<std::size_t> first_reaching(const std::vector<CurvePoint>& points, double start, double best,
                                          double threshold);

OptimizeResult optimize(const ExperimentSpec& spec);
void write_trajectories(const OptimizeResult& r, bool wall_clock, std::ostream& out);
void write_auc(const OptimizeResult& r, std::ostream& out);
void write_improvement(const OptimizeResult& r, bool wall_clock, std::ostream& out);

// --- oracle ----------------------------------------------------------------

struct OracleRow {
  HeavisideOracleResult analytic;
  double measured_vrr = 0.0;
  std::size_t n = 0;
};

std::vector<OracleRow> oracle(const ExperimentSpec& spec);
void write_oracle(const std::vector<OracleRow>& rows, std::ostream& out);

/// Resolves the spec, runs the command and writes its outputs to spec.out
/// (plus `<out>.auc.csv` and `<out>.improvement.csv` for optimize). Throws
/// std::runtime_error with the path on I/O failures.
void run_command(const ExperimentSpec& spec);

}  // namespace peekgrad::harness
