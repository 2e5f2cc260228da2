#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "oamcmab/env.hpp"
#include "oamcmab/phaseopt.hpp"

namespace oamcmab {

enum class Method { Proposed, Baseline };

const char* method_name(Method m);
Method parse_method(const std::string& s);

// Which steps keep full probability traces. Regret and separation statistics
// are exact at every step regardless.
struct RecordStride {
  std::uint64_t dense_until = 1000;  // every step t <= dense_until
  std::uint64_t stride = 10;         // then every stride-th step

  bool records(std::uint64_t t) const {
    return t <= dense_until || (t - dense_until) % stride == 0;
  }
};

struct RunConfig {
  Environment env = make_named_env("Env1-1");
  Method method = Method::Proposed;
  std::vector<Method> sweep_methods{Method::Proposed};
  std::uint64_t horizon = 10000;
  std::uint64_t trials = 5000;
  double lambda = 0.11;
  std::vector<double> lambda_grid;  // empty means 0.01, 0.02, ..., 0.15
  std::uint64_t seed = 0;
  OptimizerSettings optimizer;
  RecordStride record;
  std::string out_dir = "out";

  void validate() const;
};

std::vector<double> default_lambda_grid();

// One episode. Per-step series have length T; recorded series hold one entry
// per recorded step (see recorded_t).
struct TrialRecord {
  std::uint64_t seed = 0;
  std::size_t n_arms = 0;
  std::vector<std::uint16_t> arm1, arm2;  // zero-based
  std::vector<double> reward1, reward2;
  std::vector<double> p_sep;
  std::vector<std::uint64_t> attempts;
  std::size_t conflicts = 0;

  std::vector<std::uint64_t> recorded_t;
  std::vector<double> p_hat;      // [k][player][arm]
  std::vector<double> q;          // [k][player][arm]
  std::vector<double> objective;  // [k][player]; 0 for the baseline
  std::vector<std::uint8_t> optimizer_converged;  // [k][player]

  std::size_t steps() const { return arm1.size(); }
  double p_hat_at(std::size_t k, int player, std::size_t arm) const {
    return p_hat[(k * 2 + static_cast<std::size_t>(player - 1)) * n_arms + arm];
  }
  double q_at(std::size_t k, int player, std::size_t arm) const {
    return q[(k * 2 + static_cast<std::size_t>(player - 1)) * n_arms + arm];
  }
};

TrialRecord run_trial(const RunConfig& config, std::uint64_t trial_seed);

// Regret(t) for t = 0..T from expected rewards of the chosen arms, averaged
// over the records. Entry 0 is 0.
std::vector<double> regret_curve(std::span<const TrialRecord> records, const Environment& env);

// Half the sum over players of the root-mean-square (over records) gap between
// desired and output probability of `arm` at step t. t must be a recorded step.
double rmse_curve(std::span<const TrialRecord> records, std::uint64_t t, std::size_t arm);

struct RunSummary {
  std::string env_name;
  std::vector<double> reward_probs;
  Method method = Method::Proposed;
  double lambda = 0.0;
  std::uint64_t horizon = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;

  std::vector<double> regret;  // length T + 1
  std::vector<double> psep_mean, psep_min, psep_max;  // length T, index t - 1
  std::vector<std::uint64_t> recorded_t;
  std::vector<double> rmse;  // [k][arm]
  std::vector<double> trial_final_regret;
  std::vector<std::uint64_t> trial_seeds;
  std::vector<double> trial_mean_attempts;
  std::uint64_t conflicts = 0;
  std::uint64_t optimizer_nonconverged = 0;
  double mean_attempts = 0.0;

  double final_regret() const { return regret.back(); }
  double final_regret_stderr() const;
  double rmse_at(std::size_t k, std::size_t arm) const {
    return rmse[k * reward_probs.size() + arm];
  }
};

// Runs config.trials episodes with child seeds derived from config.seed and
// reduces them in trial order. Output does not depend on `threads`.
RunSummary run_experiment(const RunConfig& config, unsigned threads = 1);

struct SweepRow {
  double lambda = 0.0;
  Method method = Method::Proposed;
  double final_regret = 0.0;
  double std_error = 0.0;
};

// One experiment per (method, lambda). Every lambda reuses the same child-seed
// schedule.
std::vector<SweepRow> sweep_lambda(const RunConfig& base, std::span<const double> lambdas,
                                   std::span<const Method> methods, unsigned threads = 1);

}  // namespace oamcmab
