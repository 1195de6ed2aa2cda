// SPDX-License-Identifier: Apache-2.0
//
// peekgrad <verify|vrr|bench|optimize|oracle> [options]
//
// Command-line flags override entries of --config, which override built-in
// defaults. Config keys use the long flag names with dashes replaced by
// underscores (sigma, c_factor, reps, ...). Keys prefixed with a model id,
// such as `dynamnews.customers`, are forwarded to the model.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "peekgrad/harness.hpp"
#include "peekgrad/keyvalue.hpp"

namespace {

using peekgrad::KeyValues;
using peekgrad::harness::ExperimentSpec;

template <class T, class Read>
void apply_config(const CLI::Option* opt, T& target, const KeyValues& kv, const std::string& key, Read read) {
  if (opt->count() == 0 && kv.contains(key)) target = read(kv, key, target);
}

std::string read_string(const KeyValues& kv, const std::string& key, const std::string& fallback) {
  return kv.get_string(key, fallback);
}
double read_double(const KeyValues& kv, const std::string& key, const double& fallback) {
  return kv.get_double(key, fallback);
}
std::vector<double> read_doubles(const KeyValues& kv, const std::string& key, const std::vector<double>& fallback) {
  return kv.get_doubles(key, fallback);
}
std::vector<std::string> read_strings(const KeyValues& kv, const std::string& key,
                                      const std::vector<std::string>& fallback) {
  return kv.get_strings(key, fallback);
}
std::size_t read_size(const KeyValues& kv, const std::string& key, const std::size_t& fallback) {
  const auto v = kv.get_int(key, static_cast<std::int64_t>(fallback));
  if (v < 0) throw std::invalid_argument(key + " must be >= 0");
  return static_cast<std::size_t>(v);
}
std::uint64_t read_u64(const KeyValues& kv, const std::string& key, const std::uint64_t& fallback) {
  return static_cast<std::uint64_t>(kv.get_int(key, static_cast<std::int64_t>(fallback)));
}
bool read_bool(const KeyValues& kv, const std::string& key, const bool& fallback) {
  return kv.get_bool(key, fallback);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zeroth-order gradient estimation with dimensional peeking"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string model = "heaviside";
  std::vector<std::string> estimators{"pgo", "pgo_dp"};
  std::vector<double> sigmas;
  std::vector<double> c_factors;
  std::size_t reps = 0;
  std::uint64_t seed = 1;
  std::string out;
  std::string config_path;
  std::vector<std::string> optimizers{"gd", "adam"};
  std::vector<double> lrs;
  std::size_t steps = 100;
  std::size_t budget = 0;
  std::size_t objective_evals = 1;
  std::size_t threads = 1;
  std::size_t batch = 0;
  bool exact = false;
  bool wall_clock = false;

  struct Options {
    CLI::Option *model, *estimator, *sigma, *c_factor, *reps, *seed, *out, *optimizer, *lr, *steps, *budget,
        *objective_evals, *threads, *batch, *exact, *wall_clock;
  } o{};

  for (const char* name : {"verify", "vrr", "bench", "optimize", "oracle"}) {
    app.add_subcommand(name);
  }
  o.model = app.add_option("--model", model, "heaviside, linear, branchy, dynamnews or hotel");
  o.estimator = app.add_option("--estimator", estimators, "pgo and/or pgo_dp")->delimiter(',');
  o.sigma = app.add_option("--sigma", sigmas, "Perturbation scales")->delimiter(',');
  o.c_factor = app.add_option("--c-factor", c_factors, "Coverage radii in units of sigma")->delimiter(',');
  o.reps = app.add_option("--reps", reps, "Replications (0 selects the command default)");
  o.seed = app.add_option("--seed", seed, "Master seed");
  o.out = app.add_option("--out", out, "Output CSV path (stdout when omitted)");
  app.add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
  o.optimizer = app.add_option("--optimizer", optimizers, "gd and/or adam")->delimiter(',');
  o.lr = app.add_option("--lr", lrs, "Learning rates")->delimiter(',');
  o.steps = app.add_option("--steps", steps, "Optimizer steps per replication");
  o.budget = app.add_option("--budget", budget, "Estimator evaluation budget per replication (0 = none)");
  o.objective_evals = app.add_option("--objective-evals", objective_evals, "Evaluations per reported objective");
  o.threads = app.add_option("--threads", threads, "Worker threads (0 = all cores)");
  o.batch = app.add_option("--batch", batch, "Evaluations per timed batch in bench (0 = calibrate)");
  o.exact = app.add_flag("--exact", exact, "verify: enumerate perturbations instead of sampling");
  o.wall_clock = app.add_flag("--wall-clock", wall_clock, "optimize: add elapsed-time columns");

  CLI11_PARSE(app, argc, argv);

  try {
    KeyValues kv;
    if (!config_path.empty()) kv = KeyValues::load(config_path);

    apply_config(o.model, model, kv, "model", read_string);
    apply_config(o.estimator, estimators, kv, "estimator", read_strings);
    apply_config(o.sigma, sigmas, kv, "sigma", read_doubles);
    apply_config(o.c_factor, c_factors, kv, "c_factor", read_doubles);
    apply_config(o.reps, reps, kv, "reps", read_size);
    apply_config(o.seed, seed, kv, "seed", read_u64);
    apply_config(o.out, out, kv, "out", read_string);
    apply_config(o.optimizer, optimizers, kv, "optimizer", read_strings);
    apply_config(o.lr, lrs, kv, "lr", read_doubles);
    apply_config(o.steps, steps, kv, "steps", read_size);
    apply_config(o.budget, budget, kv, "budget", read_size);
    apply_config(o.objective_evals, objective_evals, kv, "objective_evals", read_size);
    apply_config(o.threads, threads, kv, "threads", read_size);
    apply_config(o.batch, batch, kv, "batch", read_size);
    apply_config(o.exact, exact, kv, "exact", read_bool);
    apply_config(o.wall_clock, wall_clock, kv, "wall_clock", read_bool);

    ExperimentSpec spec;
    spec.command = app.get_subcommands().front()->get_name();
    spec.model = model;
    spec.estimators.clear();
    for (const auto& e : estimators) spec.estimators.push_back(peekgrad::parse_estimator(e));
    spec.sigmas = sigmas;
    spec.c_factors = c_factors;
    spec.reps = reps;
    spec.seed = seed;
    spec.out = out;
    spec.model_config = kv;
    spec.threads = threads;
    spec.exact = exact;
    spec.bench_batch = batch;
    spec.optimizers.clear();
    for (const auto& name : optimizers) spec.optimizers.push_back(peekgrad::parse_optimizer(name));
    spec.learning_rates = lrs;
    spec.steps = steps;
    spec.evaluation_budget = budget;
    spec.objective_evaluations = objective_evals;
    spec.wall_clock = wall_clock;

    peekgrad::harness::run_command(spec);
  } catch (const std::exception& e) {
    std::cerr << "peekgrad: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
