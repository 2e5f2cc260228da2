#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "oamcmab/error.hpp"
#include "oamcmab/io.hpp"

using namespace oamcmab;
namespace fs = std::filesystem;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
    return e.what();
  }
  return "";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("oamcmab_test_io_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("empty document gives defaults") {
  const auto cfg = parse_config("{}");
  CHECK(cfg.env.name() == "Env1-1");
  CHECK(cfg.horizon == 10000);
  CHECK(cfg.trials == 5000);
  CHECK(cfg.lambda == 0.11);
  CHECK(cfg.seed == 0);
  CHECK(cfg.method == Method::Proposed);
  CHECK(cfg.optimizer.tol_grad == 1e-8);
  CHECK(cfg.optimizer.tol_f == 1e-12);
  CHECK(cfg.optimizer.max_iter == 500);
  CHECK_FALSE(cfg.optimizer.warm_start);
}

TEST_CASE("full document") {
  const auto cfg = parse_config(R"({
    "env": {"name": "Env2-3"}, "method": "both", "T": 50, "E": 7, "lambda": 0.05,
    "lambda_grid": [0.05, 0.1], "seed": 9,
    "optimizer": {"tol_grad": 1e-9, "tol_f": 1e-13, "max_iter": 40, "warm_start": true},
    "record_stride": {"dense_until": 10, "stride": 3}, "out_dir": "elsewhere"})");
  CHECK(cfg.env.n_arms() == 10);
  CHECK(cfg.sweep_methods.size() == 2);
  CHECK(cfg.horizon == 50);
  CHECK(cfg.trials == 7);
  CHECK(cfg.lambda == 0.05);
  CHECK(cfg.lambda_grid == std::vector<double>{0.05, 0.1});
  CHECK(cfg.seed == 9);
  CHECK(cfg.optimizer.max_iter == 40);
  CHECK(cfg.optimizer.warm_start);
  CHECK(cfg.record.dense_until == 10);
  CHECK(cfg.record.stride == 3);
  CHECK(cfg.out_dir == "elsewhere");
}

TEST_CASE("custom reward vector") {
  const auto cfg = parse_config(R"({"env": {"probs": [0.9, 0.1, 0.5], "name": "mine"}})");
  CHECK(cfg.env.n_arms() == 3);
  CHECK(cfg.env.name() == "mine");
  CHECK(error_of(R"({"env": {"probs": [0.9, 1.5]}})").find("env.probs") != std::string::npos);
  CHECK(error_of(R"({"env": {"probs": [0.9]}})").find("env.probs") != std::string::npos);
}

TEST_CASE("schema violations name the offending field") {
  CHECK(error_of(R"({"env": {"name": "Env9-9"}})").find("env.name") != std::string::npos);
  CHECK(error_of(R"({"horizon": 10})").find("unknown field 'horizon'") != std::string::npos);
  CHECK(error_of(R"({"optimizer": {"tolerance": 1}})").find("optimizer.tolerance") !=
        std::string::npos);
  CHECK(error_of(R"({"T": -5})").find("T") != std::string::npos);
  CHECK(error_of(R"({"T": 1.5})").find("T") != std::string::npos);
  CHECK(error_of(R"({"E": 0})").find("E") != std::string::npos);
  CHECK(error_of(R"({"lambda": "big"})").find("lambda") != std::string::npos);
  CHECK(error_of(R"({"lambda": 0})").find("lambda") != std::string::npos);
  CHECK(error_of(R"({"method": "quantum"})").find("method") != std::string::npos);
  CHECK(error_of(R"({"method": []})").find("method") != std::string::npos);
  CHECK(error_of(R"({"lambda_grid": []})").find("lambda_grid") != std::string::npos);
  CHECK(error_of(R"({"record_stride": {"stride": 0}})").find("record_stride.stride") !=
        std::string::npos);
  CHECK(error_of(R"({"optimizer": {"warm_start": 1}})").find("warm_start") != std::string::npos);
  CHECK(error_of("[1, 2]").find("config") != std::string::npos);
  CHECK(error_of("{not json").find("JSON") != std::string::npos);
}

TEST_CASE("missing config file is an io error") {
  try {
    load_config("/nonexistent/dir/config.json");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
  }
}

TEST_CASE("run bundle contents") {
  auto cfg = parse_config(R"({"T": 30, "E": 3, "seed": 4, "record_stride": {"dense_until": 10, "stride": 5}})");
  const auto summary = run_experiment(cfg, 1);
  const auto dir = scratch("bundle");
  const auto paths = write_run_bundle(summary, cfg, dir.string());
  REQUIRE(paths.size() == 3);
  for (const auto& p : paths) CHECK(fs::exists(p));

  const auto doc = nlohmann::json::parse(slurp(dir / "summary.json"));
  CHECK(doc["config"]["T"] == 30);
  CHECK(doc["config"]["env"]["name"] == "Env1-1");
  CHECK(doc["conflicts"] == 0);
  CHECK(doc["final_regret"].get<double>() == doctest::Approx(summary.final_regret()));
  CHECK(doc["recorded_steps"] == 14);  // t = 1..10, 15, 20, 25, 30

  std::istringstream curves(slurp(dir / "curves.csv"));
  std::string line;
  std::getline(curves, line);
  CHECK(line == "t,regret,psep_mean,psep_min,psep_max,rmse_arm1,rmse_arm2,rmse_arm3,rmse_arm4,rmse_arm5");
  int rows = 0;
  std::string last;
  while (std::getline(curves, line)) {
    ++rows;
    last = line;
  }
  CHECK(rows == 14);
  CHECK(last.rfind("30,", 0) == 0);

  std::istringstream trials(slurp(dir / "trials.csv"));
  std::getline(trials, line);
  CHECK(line == "trial,seed,final_regret,mean_attempts");
  rows = 0;
  while (std::getline(trials, line)) ++rows;
  CHECK(rows == 3);

  // same inputs, byte-identical files
  const auto again = scratch("bundle_again");
  write_run_bundle(run_experiment(cfg, 2), cfg, again.string());
  for (const char* f : {"summary.json", "curves.csv", "trials.csv"})
    CHECK(slurp(dir / f) == slurp(again / f));
  fs::remove_all(dir);
  fs::remove_all(again);
}

TEST_CASE("sweep table") {
  const auto dir = scratch("sweep");
  const std::vector<SweepRow> rows{{0.05, Method::Proposed, 12.5, 0.5},
                                   {0.05, Method::Baseline, 30.0, 2.0}};
  const auto path = write_sweep_table(rows, dir.string());
  CHECK(slurp(path) ==
        "lambda,method,final_regret,std_error\n"
        "0.050000000000000003,proposed,12.5,0.5\n"
        "0.050000000000000003,baseline,30,2\n");
  fs::remove_all(dir);
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456789.123456789, -2.5})
    CHECK(std::stod(format_double(v)) == v);
}
