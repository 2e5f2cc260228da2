#include "oamcmab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "oamcmab/baseline.hpp"
#include "oamcmab/error.hpp"
#include "oamcmab/policy.hpp"
#include "oamcmab/quantum.hpp"
#include "oamcmab/rng.hpp"

namespace oamcmab {

const char* method_name(Method m) { return m == Method::Proposed ? "proposed" : "baseline"; }

Method parse_method(const std::string& s) {
  if (s == "proposed") return Method::Proposed;
  if (s == "baseline") return Method::Baseline;
  fail(ErrorKind::Config, "method: expected 'proposed' or 'baseline', got '" + s + "'");
}

std::vector<double> default_lambda_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 15; ++i) grid.push_back(i / 100.0);
  return grid;
}

void RunConfig::validate() const {
  if (horizon < 1) fail(ErrorKind::Config, "T: horizon must be at least 1");
  if (horizon > std::numeric_limits<std::uint32_t>::max())
    fail(ErrorKind::Config, "T: horizon is too large");
  if (trials < 1) fail(ErrorKind::Config, "E: number of trials must be at least 1");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    fail(ErrorKind::Config, "lambda: must be positive and finite");
  for (double l : lambda_grid)
    if (!(l > 0.0) || !std::isfinite(l))
      fail(ErrorKind::Config, "lambda_grid: values must be positive and finite");
  if (env.n_arms() > std::numeric_limits<std::uint16_t>::max())
    fail(ErrorKind::Config, "env: too many arms");
  if (!(optimizer.tol_grad >= 0.0) || !(optimizer.tol_f >= 0.0))
    fail(ErrorKind::Config, "optimizer: tolerances must be nonnegative");
  if (optimizer.max_iter < 0) fail(ErrorKind::Config, "optimizer.max_iter: must be nonnegative");
  if (record.stride < 1) fail(ErrorKind::Config, "record_stride.stride: must be at least 1");
  if (sweep_methods.empty()) fail(ErrorKind::Config, "method: at least one method is required");
}

TrialRecord run_trial(const RunConfig& config, std::uint64_t trial_seed) {
  const Environment& env = config.env;
  const std::size_t n = env.n_arms();
  const BetaSchedule schedule{config.lambda};
  const std::uint64_t horizon = config.horizon;

  Rng rng(trial_seed);
  PlayerState players[2] = {PlayerState(n), PlayerState(n)};
  std::vector<double> warm[2];

  TrialRecord rec;
  rec.seed = trial_seed;
  rec.n_arms = n;
  rec.arm1.reserve(horizon);
  rec.arm2.reserve(horizon);
  rec.reward1.reserve(horizon);
  rec.reward2.reserve(horizon);
  rec.p_sep.reserve(horizon);
  rec.attempts.reserve(horizon);

  std::vector<double> p_hat[2];
  std::vector<double> q[2];
  double objective_value[2] = {0.0, 0.0};
  bool converged[2] = {true, true};

  for (std::uint64_t t = 1; t <= horizon; ++t) {
    for (int m = 0; m < 2; ++m) {
      const auto mu_hat = empirical_means(players[m]);
      p_hat[m] = desired_probabilities(mu_hat, effective_beta(players[m], schedule, t));
    }

    Selection sel;
    double p_sep = 0.5;
    try {
      if (config.method == Method::Proposed) {
        std::vector<double> theta[2];
        for (int m = 0; m < 2; ++m) {
          const bool use_warm = config.optimizer.warm_start && !warm[m].empty();
          PhaseSolution sol = optimize(p_hat[m], config.optimizer,
                                       use_warm ? std::span<const double>(warm[m])
                                                : std::span<const double>{});
          objective_value[m] = sol.objective_value;
          converged[m] = sol.converged;
          theta[m] = assign_phases(m + 1, sol.omega_hat);
          if (config.optimizer.warm_start) warm[m] = std::move(sol.omega_hat);
        }
        const OamState s1 = make_state(p_hat[0], theta[0]);
        const OamState s2 = make_state(p_hat[1], theta[1]);
        const JointOutcome joint = joint_distribution(s1, s2);
        p_sep = joint.p_sep;
        sel = sample_selection(joint, rng);
        if (config.record.records(t)) {
          q[0] = output_probabilities(joint);
          q[1] = output_probabilities_player2(joint);
        }
      } else {
        const BaselineJoint joint = baseline_joint(p_hat[0], p_hat[1]);
        p_sep = joint.p_sep;
        sel = baseline_sample(joint, rng);
        if (config.record.records(t)) {
          q[0] = baseline_output_probabilities(joint, 1);
          q[1] = baseline_output_probabilities(joint, 2);
        }
      }
    } catch (const Error& e) {
      throw Error(e.kind(), "step " + std::to_string(t) + ": " + e.what());
    }

    const auto [r1, r2] = draw_rewards(env, sel.arm1, sel.arm2, rng);
    players[0].record(sel.arm1, r1.reward);
    players[1].record(sel.arm2, r2.reward);

    rec.arm1.push_back(static_cast<std::uint16_t>(sel.arm1));
    rec.arm2.push_back(static_cast<std::uint16_t>(sel.arm2));
    rec.reward1.push_back(r1.reward);
    rec.reward2.push_back(r2.reward);
    rec.p_sep.push_back(p_sep);
    rec.attempts.push_back(sel.attempts);
    if (sel.arm1 == sel.arm2) ++rec.conflicts;

    if (config.record.records(t)) {
      rec.recorded_t.push_back(t);
      for (int m = 0; m < 2; ++m) {
        rec.p_hat.insert(rec.p_hat.end(), p_hat[m].begin(), p_hat[m].end());
        rec.q.insert(rec.q.end(), q[m].begin(), q[m].end());
        rec.objective.push_back(config.method == Method::Proposed ? objective_value[m] : 0.0);
        rec.optimizer_converged.push_back(converged[m] ? 1 : 0);
      }
    }
  }
  return rec;
}

namespace {

// C_{i,j} (mu_i + mu_j) with C = 1 - delta_ij / 2
double expected_step_reward(const Environment& env, std::size_t a, std::size_t b) {
  const double c = a == b ? 0.5 : 1.0;
  return c * (env.reward_prob(a) + env.reward_prob(b));
}

void check_compatible(std::span<const TrialRecord> records) {
  if (records.empty()) fail(ErrorKind::Domain, "no trial records");
  for (const auto& r : records)
    if (r.steps() != records[0].steps() || r.n_arms != records[0].n_arms ||
        r.recorded_t != records[0].recorded_t)
      fail(ErrorKind::Domain, "trial records have mismatched shapes");
}

}  // namespace

std::vector<double> regret_curve(std::span<const TrialRecord> records, const Environment& env) {
  check_compatible(records);
  if (records[0].n_arms != env.n_arms())
    fail(ErrorKind::Domain, "records do not match the environment's arm count");
  const std::size_t horizon = records[0].steps();
  std::vector<double> per_step(horizon, 0.0);
  for (const auto& r : records)
    for (std::size_t i = 0; i < horizon; ++i)
      per_step[i] += expected_step_reward(env, r.arm1[i], r.arm2[i]);

  const double best = env.best_pair_sum();
  const double e = static_cast<double>(records.size());
  std::vector<double> regret(horizon + 1, 0.0);
  double obtained = 0.0;
  for (std::size_t i = 0; i < horizon; ++i) {
    obtained += per_step[i] / e;
    regret[i + 1] = best * static_cast<double>(i + 1) - obtained;
  }
  return regret;
}

double rmse_curve(std::span<const TrialRecord> records, std::uint64_t t, std::size_t arm) {
  check_compatible(records);
  const auto& ts = records[0].recorded_t;
  const auto it = std::lower_bound(ts.begin(), ts.end(), t);
  if (it == ts.end() || *it != t)
    fail(ErrorKind::Domain, "step " + std::to_string(t) + " was not recorded");
  if (arm >= records[0].n_arms) fail(ErrorKind::Domain, "arm index out of range");
  const auto k = static_cast<std::size_t>(it - ts.begin());

  double result = 0.0;
  for (int m = 1; m <= 2; ++m) {
    double sq = 0.0;
    for (const auto& r : records) {
      const double d = r.p_hat_at(k, m, arm) - r.q_at(k, m, arm);
      sq += d * d;
    }
    result += 0.5 * std::sqrt(sq / static_cast<double>(records.size()));
  }
  return result;
}

double RunSummary::final_regret_stderr() const {
  const std::size_t e = trial_final_regret.size();
  if (e < 2) return 0.0;
  double mean = 0.0;
  for (double r : trial_final_regret) mean += r;
  mean /= static_cast<double>(e);
  double var = 0.0;
  for (double r : trial_final_regret) var += (r - mean) * (r - mean);
  var /= static_cast<double>(e - 1);
  return std::sqrt(var / static_cast<double>(e));
}

namespace {

// Streaming reduction over trials, fed strictly in trial order.
class Aggregator {
 public:
  explicit Aggregator(const RunConfig& config) : env_(config.env) {
    const auto horizon = static_cast<std::size_t>(config.horizon);
    reward_sum_.assign(horizon, 0.0);
    psep_sum_.assign(horizon, 0.0);
    psep_min_.assign(horizon, std::numeric_limits<double>::infinity());
    psep_max_.assign(horizon, -std::numeric_limits<double>::infinity());
    for (std::uint64_t t = 1; t <= config.horizon; ++t)
      if (config.record.records(t)) recorded_t_.push_back(t);
    sq_.assign(recorded_t_.size() * 2 * env_.n_arms(), 0.0);

    summary_.env_name = env_.name();
    summary_.reward_probs = env_.reward_probs();
    summary_.method = config.method;
    summary_.lambda = config.lambda;
    summary_.horizon = config.horizon;
    summary_.trials = config.trials;
    summary_.seed = config.seed;
  }

  void add(const TrialRecord& r) {
    const std::size_t horizon = reward_sum_.size();
    double trial_obtained = 0.0;
    double attempts = 0.0;
    for (std::size_t i = 0; i < horizon; ++i) {
      const double v = expected_step_reward(env_, r.arm1[i], r.arm2[i]);
      reward_sum_[i] += v;
      trial_obtained += v;
      psep_sum_[i] += r.p_sep[i];
      psep_min_[i] = std::min(psep_min_[i], r.p_sep[i]);
      psep_max_[i] = std::max(psep_max_[i], r.p_sep[i]);
      attempts += static_cast<double>(r.attempts[i]);
    }
    for (std::size_t j = 0; j < sq_.size(); ++j) {
      const double d = r.p_hat[j] - r.q[j];
      sq_[j] += d * d;
    }
    for (auto c : r.optimizer_converged)
      if (!c) ++summary_.optimizer_nonconverged;
    summary_.conflicts += r.conflicts;
    summary_.trial_seeds.push_back(r.seed);
    summary_.trial_final_regret.push_back(env_.best_pair_sum() * static_cast<double>(horizon) -
                                          trial_obtained);
    summary_.trial_mean_attempts.push_back(attempts / static_cast<double>(horizon));
    ++count_;
  }

  RunSummary finish() {
    const std::size_t horizon = reward_sum_.size();
    const double e = static_cast<double>(count_);
    const std::size_t n = env_.n_arms();
    const double best = env_.best_pair_sum();

    summary_.regret.assign(horizon + 1, 0.0);
    double obtained = 0.0;
    for (std::size_t i = 0; i < horizon; ++i) {
      obtained += reward_sum_[i] / e;
      summary_.regret[i + 1] = best * static_cast<double>(i + 1) - obtained;
    }
    summary_.psep_mean.resize(horizon);
    for (std::size_t i = 0; i < horizon; ++i) summary_.psep_mean[i] = psep_sum_[i] / e;
    summary_.psep_min = std::move(psep_min_);
    summary_.psep_max = std::move(psep_max_);

    summary_.recorded_t = recorded_t_;
    summary_.rmse.assign(recorded_t_.size() * n, 0.0);
    for (std::size_t k = 0; k < recorded_t_.size(); ++k)
      for (std::size_t a = 0; a < n; ++a) {
        double v = 0.0;
        for (std::size_t m = 0; m < 2; ++m) v += 0.5 * std::sqrt(sq_[(k * 2 + m) * n + a] / e);
        summary_.rmse[k * n + a] = v;
      }

    double attempts = 0.0;
    for (double a : summary_.trial_mean_attempts) attempts += a;
    summary_.mean_attempts = attempts / e;
    return std::move(summary_);
  }

 private:
  const Environment& env_;
  std::vector<double> reward_sum_, psep_sum_, psep_min_, psep_max_;
  std::vector<std::uint64_t> recorded_t_;
  std::vector<double> sq_;
  std::size_t count_ = 0;
  RunSummary summary_;
};

}  // namespace

RunSummary run_experiment(const RunConfig& config, unsigned threads) {
  config.validate();
  threads = std::max(1u, threads);
  Aggregator agg(config);

  const std::uint64_t block = std::max<std::uint64_t>(64, 8ull * threads);
  std::vector<TrialRecord> records;
  for (std::uint64_t first = 0; first < config.trials; first += block) {
    const std::uint64_t count = std::min(block, config.trials - first);
    records.assign(count, TrialRecord{});

    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::uint64_t failed_trial = std::numeric_limits<std::uint64_t>::max();
    std::mutex failure_mutex;

    auto worker = [&] {
      for (;;) {
        const std::uint64_t i = next.fetch_add(1);
        if (i >= count) return;
        const std::uint64_t trial = first + i;
        try {
          records[i] = run_trial(config, child_seed(config.seed, trial));
        } catch (...) {
          // keep the lowest failing trial so the report is deterministic
          std::lock_guard lock(failure_mutex);
          if (trial < failed_trial) {
            failed_trial = trial;
            failure = std::current_exception();
          }
        }
      }
    };

    const unsigned n_workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, count));
    if (n_workers <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }

    if (failure) {
      try {
        std::rethrow_exception(failure);
      } catch (const Error& e) {
        throw Error(e.kind(), "trial " + std::to_string(failed_trial + 1) + ", " + e.what());
      }
    }
    for (const auto& r : records) agg.add(r);
  }
  return agg.finish();
}

std::vector<SweepRow> sweep_lambda(const RunConfig& base, std::span<const double> lambdas,
                                   std::span<const Method> methods, unsigned threads) {
  if (lambdas.empty()) fail(ErrorKind::Config, "lambda_grid: must not be empty");
  std::vector<SweepRow> rows;
  for (Method method : methods) {
    for (double lambda : lambdas) {
      RunConfig cfg = base;
      cfg.method = method;
      cfg.lambda = lambda;
      const RunSummary s = run_experiment(cfg, threads);
      rows.push_back(SweepRow{lambda, method, s.final_regret(), s.final_regret_stderr()});
    }
  }
  return rows;
}

}  // namespace oamcmab
