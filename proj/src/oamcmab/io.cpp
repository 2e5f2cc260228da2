#include "oamcmab/io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

#include "oamcmab/error.hpp"

namespace oamcmab {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key))
      fail(ErrorKind::Config, "unknown field '" + where + key + "'");
}

const json& require_object(const json& v, const std::string& field) {
  if (!v.is_object()) fail(ErrorKind::Config, field + ": expected an object");
  return v;
}

double get_number(const json& v, const std::string& field) {
  if (!v.is_number()) fail(ErrorKind::Config, field + ": expected a number");
  return v.get<double>();
}

std::uint64_t get_count(const json& v, const std::string& field) {
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0))
    fail(ErrorKind::Config, field + ": expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

std::string get_string(const json& v, const std::string& field) {
  if (!v.is_string()) fail(ErrorKind::Config, field + ": expected a string");
  return v.get<std::string>();
}

Environment parse_env(const json& v) {
  require_object(v, "env");
  reject_unknown(v, {"name", "probs"}, "env.");
  if (v.contains("probs")) {
    const json& p = v["probs"];
    if (!p.is_array()) fail(ErrorKind::Config, "env.probs: expected an array of numbers");
    std::vector<double> probs;
    for (const auto& x : p) probs.push_back(get_number(x, "env.probs"));
    std::string name = v.contains("name") ? get_string(v["name"], "env.name") : "custom";
    try {
      return Environment(std::move(probs), std::move(name));
    } catch (const Error& e) {
      fail(ErrorKind::Config, std::string("env.probs: ") + e.what());
    }
  }
  if (v.contains("name")) return make_named_env(get_string(v["name"], "env.name"));
  fail(ErrorKind::Config, "env: needs either 'name' or 'probs'");
}

std::vector<Method> parse_methods(const json& v) {
  std::vector<Method> out;
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "both") return {Method::Proposed, Method::Baseline};
    try {
      return {parse_method(s)};
    } catch (const Error&) {
      fail(ErrorKind::Config, "method: expected 'proposed', 'baseline' or 'both', got '" + s + "'");
    }
  }
  if (!v.is_array() || v.empty())
    fail(ErrorKind::Config, "method: expected a string or a nonempty array of strings");
  for (const auto& x : v) {
    const Method m = parse_method(get_string(x, "method"));
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  }
  return out;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Config, std::string("config is not valid JSON: ") + e.what());
  }
  require_object(doc, "config");
  reject_unknown(doc,
                 {"env", "method", "T", "E", "lambda", "lambda_grid", "seed", "optimizer",
                  "record_stride", "out_dir"},
                 "");

  RunConfig cfg;
  if (doc.contains("env")) cfg.env = parse_env(doc["env"]);
  if (doc.contains("method")) {
    cfg.sweep_methods = parse_methods(doc["method"]);
    cfg.method = cfg.sweep_methods.front();
  }
  if (doc.contains("T")) cfg.horizon = get_count(doc["T"], "T");
  if (doc.contains("E")) cfg.trials = get_count(doc["E"], "E");
  if (doc.contains("lambda")) cfg.lambda = get_number(doc["lambda"], "lambda");
  if (doc.contains("lambda_grid")) {
    const json& g = doc["lambda_grid"];
    if (!g.is_array() || g.empty())
      fail(ErrorKind::Config, "lambda_grid: expected a nonempty array of numbers");
    for (const auto& x : g) cfg.lambda_grid.push_back(get_number(x, "lambda_grid"));
  }
  if (doc.contains("seed")) cfg.seed = get_count(doc["seed"], "seed");
  if (doc.contains("optimizer")) {
    const json& o = require_object(doc["optimizer"], "optimizer");
    reject_unknown(o, {"tol_grad", "tol_f", "max_iter", "warm_start"}, "optimizer.");
    if (o.contains("tol_grad")) cfg.optimizer.tol_grad = get_number(o["tol_grad"], "optimizer.tol_grad");
    if (o.contains("tol_f")) cfg.optimizer.tol_f = get_number(o["tol_f"], "optimizer.tol_f");
    if (o.contains("max_iter")) {
      const auto it = get_count(o["max_iter"], "optimizer.max_iter");
      if (it > static_cast<std::uint64_t>(std::numeric_limits<int>::max()))
        fail(ErrorKind::Config, "optimizer.max_iter: too large");
      cfg.optimizer.max_iter = static_cast<int>(it);
    }
    if (o.contains("warm_start")) {
      if (!o["warm_start"].is_boolean())
        fail(ErrorKind::Config, "optimizer.warm_start: expected true or false");
      cfg.optimizer.warm_start = o["warm_start"].get<bool>();
    }
  }
  if (doc.contains("record_stride")) {
    const json& r = require_object(doc["record_stride"], "record_stride");
    reject_unknown(r, {"dense_until", "stride"}, "record_stride.");
    if (r.contains("dense_until"))
      cfg.record.dense_until = get_count(r["dense_until"], "record_stride.dense_until");
    if (r.contains("stride")) cfg.record.stride = get_count(r["stride"], "record_stride.stride");
  }
  if (doc.contains("out_dir")) cfg.out_dir = get_string(doc["out_dir"], "out_dir");

  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Io, "cannot write '" + path + "'");
  return out;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorKind::Io, "cannot create output directory '" + dir + "': " + ec.message());
}

json config_json(const RunConfig& c) {
  return json{{"env", {{"name", c.env.name()}, {"probs", c.env.reward_probs()}}},
              {"method", method_name(c.method)},
              {"T", c.horizon},
              {"E", c.trials},
              {"lambda", c.lambda},
              {"seed", c.seed},
              {"optimizer",
               {{"tol_grad", c.optimizer.tol_grad},
                {"tol_f", c.optimizer.tol_f},
                {"max_iter", c.optimizer.max_iter},
                {"warm_start", c.optimizer.warm_start}}},
              {"record_stride",
               {{"dense_until", c.record.dense_until}, {"stride", c.record.stride}}}};
}

}  // namespace

std::vector<std::string> write_run_bundle(const RunSummary& s, const RunConfig& config,
                                          const std::string& dir) {
  ensure_dir(dir);
  const std::string summary_path = (std::filesystem::path(dir) / "summary.json").string();
  const std::string curves_path = (std::filesystem::path(dir) / "curves.csv").string();
  const std::string trials_path = (std::filesystem::path(dir) / "trials.csv").string();
  const std::size_t n = s.reward_probs.size();

  double psep_floor = std::numeric_limits<double>::infinity();
  for (double v : s.psep_min) psep_floor = std::min(psep_floor, v);

  json summary{{"config", config_json(config)},
               {"final_regret", s.final_regret()},
               {"final_regret_stderr", s.final_regret_stderr()},
               {"conflicts", s.conflicts},
               {"mean_attempts", s.mean_attempts},
               {"psep_min_overall", psep_floor},
               {"optimizer_nonconverged", s.optimizer_nonconverged},
               {"recorded_steps", s.recorded_t.size()},
               {"files", {"curves.csv", "trials.csv"}}};
  {
    auto out = open_output(summary_path);
    out << summary.dump(2) << '\n';
  }
  {
    auto out = open_output(curves_path);
    out << "t,regret,psep_mean,psep_min,psep_max";
    for (std::size_t a = 1; a <= n; ++a) out << ",rmse_arm" << a;
    out << '\n';
    for (std::size_t k = 0; k < s.recorded_t.size(); ++k) {
      const std::uint64_t t = s.recorded_t[k];
      out << t << ',' << format_double(s.regret[t]) << ',' << format_double(s.psep_mean[t - 1])
          << ',' << format_double(s.psep_min[t - 1]) << ',' << format_double(s.psep_max[t - 1]);
      for (std::size_t a = 0; a < n; ++a) out << ',' << format_double(s.rmse_at(k, a));
      out << '\n';
    }
  }
  {
    auto out = open_output(trials_path);
    out << "trial,seed,final_regret,mean_attempts\n";
    for (std::size_t e = 0; e < s.trial_final_regret.size(); ++e)
      out << e + 1 << ',' << s.trial_seeds[e] << ',' << format_double(s.trial_final_regret[e])
          << ',' << format_double(s.trial_mean_attempts[e]) << '\n';
  }
  return {summary_path, curves_path, trials_path};
}

std::string write_sweep_table(const std::vector<SweepRow>& rows, const std::string& dir) {
  ensure_dir(dir);
  const std::string path = (std::filesystem::path(dir) / "sweep.csv").string();
  auto out = open_output(path);
  out << "lambda,method,final_regret,std_error\n";
  for (const auto& r : rows)
    out << format_double(r.lambda) << ',' << method_name(r.method) << ','
        << format_double(r.final_regret) << ',' << format_double(r.std_error) << '\n';
  return path;
}

}  // namespace oamcmab
