#pragma once

#include <string>
#include <vector>

#include "oamcmab/harness.hpp"

namespace oamcmab {

// Run configuration document (JSON). Every field is optional and unknown
// fields are rejected:
//
//   {
//     "env": {"name": "Env1-1"} | {"probs": [0.9, 0.5, ...], "name": "label"},
//     "method": "proposed" | "baseline" | "both" | ["proposed", "baseline"],
//     "T": 10000, "E": 5000, "lambda": 0.11,
//     "lambda_grid": [0.01, ..., 0.15],
//     "seed": 0,
//     "optimizer": {"tol_grad": 1e-8, "tol_f": 1e-12, "max_iter": 500, "warm_start": false},
//     "record_stride": {"dense_until": 1000, "stride": 10},
//     "out_dir": "out"
//   }
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

// summary.json, curves.csv and trials.csv under `dir` (created if missing).
// Returns the paths written.
std::vector<std::string> write_run_bundle(const RunSummary& summary, const RunConfig& config,
                                          const std::string& dir);

// sweep.csv with columns lambda,method,final_regret,std_error.
std::string write_sweep_table(const std::vector<SweepRow>& rows, const std::string& dir);

// Fixed-format decimal with 17 significant digits.
std::string format_double(double v);

}  // namespace oamcmab
