// oamcmab: command-line driver for the competitive bandit simulator.
//
//   oamcmab run    [--config PATH] [overrides...]
//   oamcmab sweep  [--config PATH] [--lambda-grid 0.05,0.1] [overrides...]
//   oamcmab verify [--seed U64] [--instances N]

#include <cstdio>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oamcmab/oamcmab.h"

namespace {

struct ConfigDeleter {
  void operator()(oam_config* c) const { oam_config_free(c); }
};
struct RunDeleter {
  void operator()(oam_run* r) const { oam_run_free(r); }
};
struct SweepDeleter {
  void operator()(oam_sweep* s) const { oam_sweep_free(s); }
};
using ConfigPtr = std::unique_ptr<oam_config, ConfigDeleter>;
using RunPtr = std::unique_ptr<oam_run, RunDeleter>;
using SweepPtr = std::unique_ptr<oam_sweep, SweepDeleter>;

struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> method;
  std::optional<double> lambda;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> horizon;
  unsigned threads = 0;
};

int report(oam_status st, const char* context) {
  std::fprintf(stderr, "oamcmab: %s: %s: %s\n", context, oam_status_name(st), oam_last_error());
  return st == OAM_OK ? 0 : static_cast<int>(st) + 1;
}

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "Run configuration (JSON)")->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--method", o.method, "proposed | baseline (sweep also accepts both)");
  cmd->add_option("--lambda", o.lambda, "Inverse-temperature slope")->check(CLI::PositiveNumber);
  cmd->add_option("--trials", o.trials, "Number of independent trials E");
  cmd->add_option("--horizon", o.horizon, "Steps per trial T");
  cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
}

// Loads the config and applies command-line overrides. Returns nonzero exit
// code on failure.
int build_config(const Overrides& o, ConfigPtr& out) {
  oam_config* raw = nullptr;
  oam_status st = o.config_path.empty() ? oam_config_default(&raw)
                                        : oam_config_load(o.config_path.c_str(), &raw);
  if (st != OAM_OK) return report(st, "config");
  out.reset(raw);
  oam_config* c = out.get();
  if (o.seed && (st = oam_config_set_seed(c, *o.seed)) != OAM_OK) return report(st, "--seed");
  if (o.out && (st = oam_config_set_out_dir(c, o.out->c_str())) != OAM_OK)
    return report(st, "--out");
  if (o.method && (st = oam_config_set_method(c, o.method->c_str())) != OAM_OK)
    return report(st, "--method");
  if (o.lambda && (st = oam_config_set_lambda(c, *o.lambda)) != OAM_OK)
    return report(st, "--lambda");
  if (o.trials && (st = oam_config_set_trials(c, *o.trials)) != OAM_OK)
    return report(st, "--trials");
  if (o.horizon && (st = oam_config_set_horizon(c, *o.horizon)) != OAM_OK)
    return report(st, "--horizon");
  return 0;
}

int cmd_run(const Overrides& o) {
  ConfigPtr cfg;
  if (int rc = build_config(o, cfg)) return rc;
  oam_run* raw = nullptr;
  oam_status st = oam_run_execute(cfg.get(), o.threads, &raw);
  if (st != OAM_OK) return report(st, "run");
  RunPtr run(raw);
  const char* dir = oam_config_out_dir(cfg.get());
  if ((st = oam_run_write(run.get(), dir)) != OAM_OK) return report(st, "write");

  std::printf("final regret %.6f +- %.6f (stderr), conflicts %llu, mean attempts %.4f\n",
              oam_run_final_regret(run.get()), oam_run_final_regret_stderr(run.get()),
              static_cast<unsigned long long>(oam_run_conflicts(run.get())),
              oam_run_mean_attempts(run.get()));
  std::printf("wrote %s/summary.json, %s/curves.csv, %s/trials.csv\n", dir, dir, dir);
  return 0;
}

int cmd_sweep(const Overrides& o, const std::string& grid_text) {
  ConfigPtr cfg;
  if (int rc = build_config(o, cfg)) return rc;
  if (!grid_text.empty()) {
    std::vector<double> grid;
    std::stringstream ss(grid_text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        grid.push_back(std::stod(item));
      } catch (const std::exception&) {
        std::fprintf(stderr, "oamcmab: --lambda-grid: cannot parse '%s'\n", item.c_str());
        return 2;
      }
    }
    oam_status st = oam_config_set_lambda_grid(cfg.get(), grid.data(), grid.size());
    if (st != OAM_OK) return report(st, "--lambda-grid");
  }

  oam_sweep* raw = nullptr;
  oam_status st = oam_sweep_execute(cfg.get(), o.threads, &raw);
  if (st != OAM_OK) return report(st, "sweep");
  SweepPtr sweep(raw);
  const char* dir = oam_config_out_dir(cfg.get());
  if ((st = oam_sweep_write(sweep.get(), dir)) != OAM_OK) return report(st, "write");

  std::printf("%-8s %-9s %14s %12s\n", "lambda", "method", "final_regret", "std_error");
  for (size_t i = 0; i < oam_sweep_rows(sweep.get()); ++i) {
    double lambda = 0, regret = 0, se = 0;
    oam_method m{};
    oam_sweep_row(sweep.get(), i, &lambda, &m, &regret, &se);
    std::printf("%-8.3f %-9s %14.4f %12.4f\n", lambda,
                m == OAM_METHOD_PROPOSED ? "proposed" : "baseline", regret, se);
  }
  std::printf("wrote %s/sweep.csv\n", dir);
  return 0;
}

void print_property(const char* name, int passed, double worst, double tolerance, void*) {
  std::printf("[%s] %-48s worst %.3e (tolerance %.1e)\n", passed ? "PASS" : "FAIL", name, worst,
              tolerance);
}

int cmd_verify(std::uint64_t seed, std::uint32_t instances) {
  const oam_status st = oam_verify(seed, instances, print_property, nullptr);
  if (st != OAM_OK) return report(st, "verify");
  std::printf("all properties passed on %u random instances\n", instances);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conflict-free two-player bandit decisions via two-photon OAM interference"};
  app.require_subcommand(1);
  app.set_version_flag("--version", oam_version());

  Overrides run_opts;
  auto* run = app.add_subcommand("run", "Run E trials and write summary.json, curves.csv, trials.csv");
  add_common(run, run_opts);

  Overrides sweep_opts;
  std::string grid_text;
  auto* sweep = app.add_subcommand("sweep", "Final regret over a lambda grid; writes sweep.csv");
  add_common(sweep, sweep_opts);
  sweep->add_option("--lambda-grid", grid_text, "Comma-separated lambda values");

  std::uint64_t verify_seed = 12345;
  std::uint32_t verify_instances = 1000;
  auto* verify = app.add_subcommand("verify", "Randomized invariant checks");
  verify->add_option("--seed", verify_seed, "Seed for random instances");
  verify->add_option("--instances", verify_instances, "Number of random state pairs");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(run_opts);
  if (sweep->parsed()) return cmd_sweep(sweep_opts, grid_text);
  return cmd_verify(verify_seed, verify_instances);
}
