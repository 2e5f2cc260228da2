#include "oamcmab/oamcmab.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <thread>

#include "oamcmab/env.hpp"
#include "oamcmab/error.hpp"
#include "oamcmab/harness.hpp"
#include "oamcmab/io.hpp"
#include "oamcmab/phaseopt.hpp"
#include "oamcmab/policy.hpp"
#include "oamcmab/quantum.hpp"
#include "oamcmab/verify.hpp"

struct oam_config {
  oamcmab::RunConfig cfg;
};

struct oam_run {
  oamcmab::RunConfig cfg;
  oamcmab::RunSummary summary;
};

struct oam_sweep {
  std::vector<oamcmab::SweepRow> rows;
};

namespace {

thread_local std::string g_last_error;

oam_status set_error(oam_status status, const std::string& msg) {
  g_last_error = msg;
  return status;
}

oam_status from_kind(oamcmab::ErrorKind kind) {
  using oamcmab::ErrorKind;
  switch (kind) {
    case ErrorKind::Config: return OAM_ERR_CONFIG;
    case ErrorKind::Domain: return OAM_ERR_DOMAIN;
    case ErrorKind::Numeric: return OAM_ERR_NUMERIC;
    case ErrorKind::Degenerate: return OAM_ERR_DEGENERATE;
    case ErrorKind::Io: return OAM_ERR_IO;
  }
  return OAM_ERR_INTERNAL;
}

// Runs `fn`, translating exceptions into status codes.
template <class Fn>
oam_status guarded(Fn&& fn) {
  g_last_error.clear();
  try {
    fn();
    return OAM_OK;
  } catch (const oamcmab::Error& e) {
    return set_error(from_kind(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(OAM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(OAM_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(OAM_ERR_INTERNAL, "unknown error");
  }
}

#define OAM_REQUIRE(cond, what) \
  do {                          \
    if (!(cond)) return set_error(OAM_ERR_INVALID_ARGUMENT, what); \
  } while (0)

unsigned resolve_threads(unsigned threads) {
  if (threads != 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace

extern "C" {

const char* oam_version(void) { return "1.0.0"; }

const char* oam_last_error(void) { return g_last_error.c_str(); }

const char* oam_status_name(oam_status status) {
  switch (status) {
    case OAM_OK: return "ok";
    case OAM_ERR_INVALID_ARGUMENT: return "invalid argument";
    case OAM_ERR_CONFIG: return "configuration error";
    case OAM_ERR_DOMAIN: return "domain error";
    case OAM_ERR_NUMERIC: return "numeric error";
    case OAM_ERR_DEGENERATE: return "degenerate state";
    case OAM_ERR_IO: return "i/o error";
    case OAM_ERR_VERIFY_FAILED: return "verification failed";
    case OAM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

oam_status oam_config_default(oam_config** out) {
  OAM_REQUIRE(out, "out is null");
  return guarded([&] { *out = new oam_config{}; });
}

oam_status oam_config_load(const char* path, oam_config** out) {
  OAM_REQUIRE(path && out, "path or out is null");
  return guarded([&] { *out = new oam_config{oamcmab::load_config(path)}; });
}

oam_status oam_config_parse(const char* json_text, oam_config** out) {
  OAM_REQUIRE(json_text && out, "json_text or out is null");
  return guarded([&] { *out = new oam_config{oamcmab::parse_config(json_text)}; });
}

void oam_config_free(oam_config* config) { delete config; }

oam_status oam_config_set_env_named(oam_config* config, const char* name) {
  OAM_REQUIRE(config && name, "config or name is null");
  return guarded([&] { config->cfg.env = oamcmab::make_named_env(name); });
}

oam_status oam_config_set_env_probs(oam_config* config, const double* probs, size_t n_arms) {
  OAM_REQUIRE(config && probs, "config or probs is null");
  return guarded([&] {
    config->cfg.env = oamcmab::Environment(std::vector<double>(probs, probs + n_arms), "custom");
  });
}

oam_status oam_config_set_seed(oam_config* config, uint64_t seed) {
  OAM_REQUIRE(config, "config is null");
  config->cfg.seed = seed;
  return OAM_OK;
}

oam_status oam_config_set_method(oam_config* config, const char* method) {
  OAM_REQUIRE(config && method, "config or method is null");
  return guarded([&] {
    const std::string m = method;
    if (m == "both") {
      config->cfg.sweep_methods = {oamcmab::Method::Proposed, oamcmab::Method::Baseline};
    } else {
      config->cfg.sweep_methods = {oamcmab::parse_method(m)};
    }
    config->cfg.method = config->cfg.sweep_methods.front();
  });
}

oam_status oam_config_set_lambda(oam_config* config, double lambda) {
  OAM_REQUIRE(config, "config is null");
  if (!(lambda > 0.0)) return set_error(OAM_ERR_CONFIG, "lambda: must be positive");
  config->cfg.lambda = lambda;
  config->cfg.lambda_grid = {lambda};
  return OAM_OK;
}

oam_status oam_config_set_lambda_grid(oam_config* config, const double* grid, size_t count) {
  OAM_REQUIRE(config && grid, "config or grid is null");
  if (count == 0) return set_error(OAM_ERR_CONFIG, "lambda_grid: must not be empty");
  for (size_t i = 0; i < count; ++i)
    if (!(grid[i] > 0.0)) return set_error(OAM_ERR_CONFIG, "lambda_grid: values must be positive");
  config->cfg.lambda_grid.assign(grid, grid + count);
  return OAM_OK;
}

oam_status oam_config_set_trials(oam_config* config, uint64_t trials) {
  OAM_REQUIRE(config, "config is null");
  if (trials < 1) return set_error(OAM_ERR_CONFIG, "E: number of trials must be at least 1");
  config->cfg.trials = trials;
  return OAM_OK;
}

oam_status oam_config_set_horizon(oam_config* config, uint64_t horizon) {
  OAM_REQUIRE(config, "config is null");
  if (horizon < 1) return set_error(OAM_ERR_CONFIG, "T: horizon must be at least 1");
  config->cfg.horizon = horizon;
  return OAM_OK;
}

oam_status oam_config_set_out_dir(oam_config* config, const char* dir) {
  OAM_REQUIRE(config && dir, "config or dir is null");
  config->cfg.out_dir = dir;
  return OAM_OK;
}

oam_status oam_config_set_warm_start(oam_config* config, int enabled) {
  OAM_REQUIRE(config, "config is null");
  config->cfg.optimizer.warm_start = enabled != 0;
  return OAM_OK;
}

const char* oam_config_out_dir(const oam_config* config) {
  return config ? config->cfg.out_dir.c_str() : nullptr;
}

size_t oam_config_n_arms(const oam_config* config) { return config ? config->cfg.env.n_arms() : 0; }

oam_status oam_run_execute(const oam_config* config, unsigned threads, oam_run** out) {
  OAM_REQUIRE(config && out, "config or out is null");
  if (config->cfg.sweep_methods.size() > 1)
    return set_error(OAM_ERR_CONFIG, "method: a run takes a single method, not a list");
  return guarded([&] {
    auto summary = oamcmab::run_experiment(config->cfg, resolve_threads(threads));
    *out = new oam_run{config->cfg, std::move(summary)};
  });
}

void oam_run_free(oam_run* run) { delete run; }

oam_status oam_run_write(const oam_run* run, const char* out_dir) {
  OAM_REQUIRE(run && out_dir, "run or out_dir is null");
  return guarded([&] { oamcmab::write_run_bundle(run->summary, run->cfg, out_dir); });
}

double oam_run_final_regret(const oam_run* run) { return run ? run->summary.final_regret() : 0.0; }

double oam_run_final_regret_stderr(const oam_run* run) {
  return run ? run->summary.final_regret_stderr() : 0.0;
}

uint64_t oam_run_conflicts(const oam_run* run) { return run ? run->summary.conflicts : 0; }

double oam_run_mean_attempts(const oam_run* run) { return run ? run->summary.mean_attempts : 0.0; }

uint64_t oam_run_horizon(const oam_run* run) { return run ? run->summary.horizon : 0; }

double oam_run_regret_at(const oam_run* run, uint64_t t) {
  if (!run || t >= run->summary.regret.size()) return 0.0;
  return run->summary.regret[t];
}

oam_status oam_run_psep_at(const oam_run* run, uint64_t t, double* mean, double* min,
                           double* max) {
  OAM_REQUIRE(run && mean && min && max, "null argument");
  OAM_REQUIRE(t >= 1 && t <= run->summary.horizon, "t out of range");
  *mean = run->summary.psep_mean[t - 1];
  *min = run->summary.psep_min[t - 1];
  *max = run->summary.psep_max[t - 1];
  return OAM_OK;
}

size_t oam_run_recorded_steps(const oam_run* run) {
  return run ? run->summary.recorded_t.size() : 0;
}

oam_status oam_run_rmse(const oam_run* run, size_t k, size_t arm, uint64_t* t, double* rmse) {
  OAM_REQUIRE(run && t && rmse, "null argument");
  OAM_REQUIRE(k < run->summary.recorded_t.size(), "k out of range");
  OAM_REQUIRE(arm >= 1 && arm <= run->summary.reward_probs.size(), "arm out of range");
  *t = run->summary.recorded_t[k];
  *rmse = run->summary.rmse_at(k, arm - 1);
  return OAM_OK;
}

oam_status oam_sweep_execute(const oam_config* config, unsigned threads, oam_sweep** out) {
  OAM_REQUIRE(config && out, "config or out is null");
  return guarded([&] {
    const auto grid = config->cfg.lambda_grid.empty() ? oamcmab::default_lambda_grid()
                                                      : config->cfg.lambda_grid;
    auto rows = oamcmab::sweep_lambda(config->cfg, grid, config->cfg.sweep_methods,
                                      resolve_threads(threads));
    *out = new oam_sweep{std::move(rows)};
  });
}

void oam_sweep_free(oam_sweep* sweep) { delete sweep; }

size_t oam_sweep_rows(const oam_sweep* sweep) { return sweep ? sweep->rows.size() : 0; }

oam_status oam_sweep_row(const oam_sweep* sweep, size_t i, double* lambda, oam_method* method,
                         double* final_regret, double* std_error) {
  OAM_REQUIRE(sweep && lambda && method && final_regret && std_error, "null argument");
  OAM_REQUIRE(i < sweep->rows.size(), "row index out of range");
  const auto& r = sweep->rows[i];
  *lambda = r.lambda;
  *method = r.method == oamcmab::Method::Proposed ? OAM_METHOD_PROPOSED : OAM_METHOD_BASELINE;
  *final_regret = r.final_regret;
  *std_error = r.std_error;
  return OAM_OK;
}

oam_status oam_sweep_write(const oam_sweep* sweep, const char* out_dir) {
  OAM_REQUIRE(sweep && out_dir, "sweep or out_dir is null");
  return guarded([&] { oamcmab::write_sweep_table(sweep->rows, out_dir); });
}

oam_status oam_verify(uint64_t seed, uint32_t instances, oam_verify_callback callback, void* user) {
  bool all_passed = true;
  const oam_status st = guarded([&] {
    oamcmab::VerifyOptions opts;
    opts.seed = seed;
    opts.instances = instances;
    for (const auto& r : oamcmab::run_property_checks(opts)) {
      all_passed = all_passed && r.passed;
      if (callback) callback(r.name.c_str(), r.passed ? 1 : 0, r.worst, r.tolerance, user);
    }
  });
  if (st != OAM_OK) return st;
  if (!all_passed) return set_error(OAM_ERR_VERIFY_FAILED, "one or more properties failed");
  return OAM_OK;
}

oam_status oam_named_env(const char* name, double* probs_out, size_t capacity, size_t* n_arms) {
  OAM_REQUIRE(name && n_arms, "name or n_arms is null");
  bool too_small = false;
  const oam_status st = guarded([&] {
    const auto env = oamcmab::make_named_env(name);
    *n_arms = env.n_arms();
    too_small = probs_out && capacity < env.n_arms();
    if (probs_out && !too_small)
      std::memcpy(probs_out, env.reward_probs().data(), env.n_arms() * sizeof(double));
  });
  OAM_REQUIRE(!too_small, "output buffer too small; n_arms holds the required size");
  return st;
}

oam_status oam_desired_probabilities(const double* mu_hat, size_t n_arms, double beta,
                                     double* p_out) {
  OAM_REQUIRE(mu_hat && p_out, "null argument");
  return guarded([&] {
    const auto p = oamcmab::desired_probabilities({mu_hat, n_arms}, beta);
    std::memcpy(p_out, p.data(), n_arms * sizeof(double));
  });
}

oam_status oam_joint_distribution(const double* p1, const double* theta1, const double* p2,
                                  const double* theta2, size_t n_arms, double* joint_out,
                                  double* p_sep) {
  OAM_REQUIRE(p1 && theta1 && p2 && theta2 && p_sep, "null argument");
  return guarded([&] {
    const auto s1 = oamcmab::make_state({p1, n_arms}, {theta1, n_arms});
    const auto s2 = oamcmab::make_state({p2, n_arms}, {theta2, n_arms});
    const auto joint = oamcmab::joint_distribution(s1, s2);
    if (joint_out) std::memcpy(joint_out, joint.probs.data(), joint.probs.size() * sizeof(double));
    *p_sep = joint.p_sep;
  });
}

oam_status oam_fidelity(const double* p1, const double* theta1, const double* p2,
                        const double* theta2, size_t n_arms, double* fidelity) {
  OAM_REQUIRE(p1 && theta1 && p2 && theta2 && fidelity, "null argument");
  return guarded([&] {
    const auto s1 = oamcmab::make_state({p1, n_arms}, {theta1, n_arms});
    const auto s2 = oamcmab::make_state({p2, n_arms}, {theta2, n_arms});
    *fidelity = oamcmab::fidelity(s1, s2);
  });
}

oam_status oam_optimize_phases(const double* p_hat, size_t n_arms, double* omega_out,
                               double* objective, int* converged) {
  OAM_REQUIRE(p_hat && omega_out && objective, "null argument");
  return guarded([&] {
    const auto sol = oamcmab::optimize({p_hat, n_arms}, oamcmab::OptimizerSettings{});
    std::memcpy(omega_out, sol.omega_hat.data(), n_arms * sizeof(double));
    *objective = sol.objective_value;
    if (converged) *converged = sol.converged ? 1 : 0;
  });
}

oam_status oam_assign_phases(int player, const double* omega_hat, size_t n_arms,
                             double* theta_out) {
  OAM_REQUIRE(omega_hat && theta_out, "null argument");
  return guarded([&] {
    const auto theta = oamcmab::assign_phases(player, {omega_hat, n_arms});
    std::memcpy(theta_out, theta.data(), n_arms * sizeof(double));
  });
}

}  // extern "C"
