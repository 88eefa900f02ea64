// command-line front end; talks to the engine exclusively through the C API
#include "wunklab.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int exit_config = 2;
constexpr int exit_numeric = 3;

struct cli_error {
  int code;
  std::string message;
  json diagnostic; // printed on numeric failures
};

const char* status_name(wunk_status st) {
  switch (st) {
  case WUNK_OK: return "ok";
  case WUNK_ERR_INVALID_PARAM: return "invalid_param";
  case WUNK_ERR_JSON: return "json";
  case WUNK_ERR_DOMAIN: return "domain";
  case WUNK_ERR_NOT_STEADY_STATE: return "not_steady_state";
  case WUNK_ERR_BOUNDARY: return "boundary";
  case WUNK_ERR_REPEATED_EIGENVALUE: return "repeated_eigenvalue";
  case WUNK_ERR_COMPLEX_EIGENVALUE: return "complex_eigenvalue";
  case WUNK_ERR_POSITIVITY: return "positivity";
  case WUNK_ERR_BRACKET: return "bracket";
  case WUNK_ERR_INFINITE_LIMIT: return "infinite_limit";
  case WUNK_ERR_NONPOSITIVE_OUTPUT: return "nonpositive_output";
  case WUNK_ERR_BAD_ARGUMENT: return "bad_argument";
  case WUNK_ERR_INTERNAL: return "internal";
  }
  return "?";
}

void check(wunk_status st) {
  if (st == WUNK_OK) return;
  const std::string msg = wunk_last_error();
  if (st == WUNK_ERR_JSON || st == WUNK_ERR_INVALID_PARAM || st == WUNK_ERR_BAD_ARGUMENT)
    throw cli_error{exit_config, msg, {}};
  throw cli_error{exit_numeric, msg, json{{"error", status_name(st)}, {"message", msg}}};
}

std::string take_string(char* s) {
  std::string out = s ? s : "";
  wunk_string_free(s);
  return out;
}

struct run_config {
  json params;
  std::optional<json> scenario;
  std::optional<json> statistics;
  std::optional<json> discrete;
  double step = 1e-3;
  double tol = 1e-8;
  int grid = 9;
  double delta_max = 0.0; // 0 = automatic
  std::string out_dir = "out";
};

void reject_unknown(const json& j, std::initializer_list<const char*> keys,
                    const std::string& where) {
  if (!j.is_object())
    throw cli_error{exit_config, "config section '" + where + "' must be an object", {}};
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : keys)
      if (it.key() == k) known = true;
    if (!known)
      throw cli_error{exit_config, "unknown config key in " + where + ": " + it.key(), {}};
  }
}

run_config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw cli_error{exit_config, "cannot open config file: " + path, {}};
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw cli_error{exit_config, "config parse failure in " + path + ": " + e.what(), {}};
  }
  reject_unknown(j, {"schema_version", "params", "scenario", "numerics", "output",
                     "statistics", "discrete"},
                 "config");
  if (!j.contains("schema_version") || j.at("schema_version") != 1)
    throw cli_error{exit_config, "config key schema_version must be 1", {}};
  if (!j.contains("params"))
    throw cli_error{exit_config, "missing config key: params", {}};

  run_config c;
  c.params = j.at("params");
  if (j.contains("scenario")) c.scenario = j.at("scenario");
  if (j.contains("statistics")) {
    reject_unknown(j.at("statistics"), {"delta", "r_n", "lambda"}, "statistics");
    c.statistics = j.at("statistics");
  }
  if (j.contains("discrete")) {
    reject_unknown(j.at("discrete"), {"i", "pi_next", "r_n"}, "discrete");
    c.discrete = j.at("discrete");
  }
  if (j.contains("numerics")) {
    const auto& n = j.at("numerics");
    reject_unknown(n, {"step", "tol", "grid", "delta_max"}, "numerics");
    c.step = n.value("step", c.step);
    c.tol = n.value("tol", c.tol);
    c.grid = n.value("grid", c.grid);
    c.delta_max = n.value("delta_max", c.delta_max);
    if (!(c.step > 0.0) || !(c.tol > 0.0) || c.grid < 1)
      throw cli_error{exit_config, "config numerics must be positive", {}};
  }
  if (j.contains("output")) {
    const auto& o = j.at("output");
    reject_unknown(o, {"directory", "formats"}, "output");
    c.out_dir = o.value("directory", c.out_dir);
  }
  return c;
}

struct params_handle {
  wunk_params* h = nullptr;
  explicit params_handle(const json& doc) { check(wunk_params_parse(doc.dump().c_str(), &h)); }
  ~params_handle() { wunk_params_free(h); }
  params_handle(const params_handle&) = delete;
  params_handle& operator=(const params_handle&) = delete;
};

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw cli_error{exit_config, "cannot write output file: " + path.string(), {}};
  out << content;
}

json shock_of(const json& scenario) {
  json sh = json::object();
  for (const char* k : {"sigma_zlb", "sigma_normal", "mu_w_zlb"})
    if (scenario.contains(k)) sh[k] = scenario.at(k);
  return sh;
}

const char* plot_script = R"py(#!/usr/bin/env python3
"""Quick look at a trajectory CSV produced by wunklab."""
import csv
import sys

import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else "trajectory.csv"
t, x, pi = [], [], []
with open(path) as fh:
    for row in csv.DictReader(fh):
        t.append(float(row["t"]))
        x.append(float(row["x"]))
        pi.append(float(row["pi"]))

fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True)
ax1.plot(t, x)
ax1.set_ylabel("x")
ax2.plot(t, pi)
ax2.set_ylabel("pi")
ax2.set_xlabel("t (quarters)")
fig.tight_layout()
plt.show()
)py";

std::string run_trajectory_csv(const params_handle& p, const json& scenario, double step) {
  wunk_trajectory* tr = nullptr;
  check(wunk_scenario_run(p.h, scenario.dump().c_str(), step, &tr));
  char* csv = nullptr;
  const wunk_status st = wunk_trajectory_csv(tr, &csv);
  std::string out = take_string(csv);
  wunk_trajectory_free(tr);
  check(st);
  return out;
}

int sweep_thread_count(size_t jobs) {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("WUNKLAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) n = static_cast<unsigned>(v);
  }
  return static_cast<int>(std::min<size_t>(n, jobs ? jobs : 1));
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      vals.push_back(std::stod(item));
    } catch (...) {
      throw cli_error{exit_config, "bad sweep value: " + item, {}};
    }
  }
  if (vals.empty())
    throw cli_error{exit_config, "sweep values must be a comma-separated list", {}};
  return vals;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"Euler-Phillips dynamical-system lab"};
  app.require_subcommand(1);

  std::string config_path, out_override, regime = "zlb", which, shock = "mu_w";
  std::string sweep_param = "T", sweep_values;
  double g = 0.0, h_rel = 1e-6;
  double x_lo = 0.1, x_hi = 1.5, pi_lo = -0.1, pi_hi = 0.1;
  int nx = 20, npi = 20;
  bool emit_plot = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "config JSON file")->required();
    sub->add_option("--out", out_override, "output directory (overrides config)");
  };

  auto* cmd_run = app.add_subcommand("run", "solve one scenario, write trajectory.csv");
  add_common(cmd_run);
  cmd_run->add_flag("--emit-plot-script", emit_plot, "also write a plotting script");

  auto* cmd_sweep = app.add_subcommand("sweep", "run the scenario over a value grid");
  add_common(cmd_sweep);
  cmd_sweep->add_option("--param", sweep_param, "scenario field to sweep (T, Delta, g, sigma_zlb)");
  cmd_sweep->add_option("--values", sweep_values, "comma-separated values")->required();

  auto* cmd_classify = app.add_subcommand("classify", "steady state and local type");
  add_common(cmd_classify);
  cmd_classify->add_option("--regime", regime, "normal_rule | zlb | peg");
  cmd_classify->add_option("--g", g, "spending level");

  auto* cmd_null = app.add_subcommand("nullclines", "Euler and Phillips nullclines");
  add_common(cmd_null);
  cmd_null->add_option("--regime", regime, "normal_rule | zlb | peg");
  cmd_null->add_option("--g", g, "spending level");

  auto* cmd_field = app.add_subcommand("phase-field", "sample the vector field on a grid");
  add_common(cmd_field);
  cmd_field->add_option("--regime", regime, "normal_rule | zlb | peg");
  cmd_field->add_option("--g", g, "spending level");
  cmd_field->add_option("--x-min", x_lo);
  cmd_field->add_option("--x-max", x_hi);
  cmd_field->add_option("--nx", nx);
  cmd_field->add_option("--pi-min", pi_lo);
  cmd_field->add_option("--pi-max", pi_hi);
  cmd_field->add_option("--npi", npi);

  auto* cmd_thresh = app.add_subcommand("thresholds", "anomaly thresholds");
  add_common(cmd_thresh);
  cmd_thresh->add_option("--which", which, "delta-star | g-star | t-star")->required();

  auto* cmd_statics = app.add_subcommand("statics", "permanent-ZLB comparative statics");
  add_common(cmd_statics);
  cmd_statics->add_option("--shock", shock, "mu_w | kappa | gamma | a | g");
  cmd_statics->add_option("--h-rel", h_rel, "relative finite-difference step");

  auto* cmd_check = app.add_subcommand("check-wunk", "wealth condition report");
  add_common(cmd_check);

  auto* cmd_disc = app.add_subcommand("discrete-check", "discrete-time coefficients");
  add_common(cmd_disc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  const run_config cfg = load_config(config_path);
  const std::string out_dir = out_override.empty() ? cfg.out_dir : out_override;
  params_handle params(cfg.params);

  auto need_scenario = [&]() -> const json& {
    if (!cfg.scenario)
      throw cli_error{exit_config, "missing config key: scenario", {}};
    return *cfg.scenario;
  };

  if (*cmd_run) {
    const std::string csv = run_trajectory_csv(params, need_scenario(), cfg.step);
    write_file(fs::path(out_dir) / "trajectory.csv", csv);
    if (emit_plot)
      write_file(fs::path(out_dir) / "plot_trajectory.py", plot_script);
    std::cout << (fs::path(out_dir) / "trajectory.csv").string() << "\n";
    return 0;
  }

  if (*cmd_sweep) {
    const json base = need_scenario();
    if (sweep_param != "T" && sweep_param != "Delta" && sweep_param != "g" &&
        sweep_param != "sigma_zlb")
      throw cli_error{exit_config, "unknown sweep param: " + sweep_param, {}};
    const auto values = parse_values(sweep_values);

    struct result {
      std::string csv;
      double x0 = 0.0, pi0 = 0.0;
      std::optional<cli_error> err;
    };
    std::vector<result> results(values.size());
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    const int nthreads = sweep_thread_count(values.size());
    auto worker = [&] {
      for (;;) {
        const size_t idx = next.fetch_add(1);
        if (idx >= values.size()) return;
        json sc = base;
        sc[sweep_param] = values[idx];
        try {
          wunk_trajectory* tr = nullptr;
          check(wunk_scenario_run(params.h, sc.dump().c_str(), cfg.step, &tr));
          char* csv = nullptr;
          const wunk_status st = wunk_trajectory_csv(tr, &csv);
          results[idx].csv = take_string(csv);
          double t0, x0, pi0;
          int tag;
          wunk_trajectory_sample(tr, 0, &t0, &x0, &pi0, &tag);
          results[idx].x0 = x0;
          results[idx].pi0 = pi0;
          wunk_trajectory_free(tr);
          check(st);
        } catch (const cli_error& e) {
          results[idx].err = e;
        }
      }
    };
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    std::string summary = sweep_param + ",x0,pi0\n";
    char buf[160];
    for (size_t i = 0; i < values.size(); ++i) {
      if (results[i].err) throw *results[i].err;
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", values[i], results[i].x0,
                    results[i].pi0);
      summary += buf;
      std::snprintf(buf, sizeof(buf), "trajectory_%03zu.csv", i);
      write_file(fs::path(out_dir) / buf, results[i].csv);
    }
    write_file(fs::path(out_dir) / "sweep.csv", summary);
    std::cout << (fs::path(out_dir) / "sweep.csv").string() << "\n";
    return 0;
  }

  if (*cmd_classify) {
    char* out = nullptr;
    check(wunk_classify_json(params.h, regime.c_str(), g, &out));
    std::cout << take_string(out) << "\n";
    return 0;
  }

  if (*cmd_null) {
    char* js = nullptr;
    check(wunk_nullclines_json(params.h, regime.c_str(), g, &js));
    std::cout << take_string(js) << "\n";
    if (!out_override.empty() || cfg.out_dir != "out") {
      char* csv = nullptr;
      check(wunk_nullclines_csv(params.h, regime.c_str(), g, &csv));
      write_file(fs::path(out_dir) / "nullclines.csv", take_string(csv));
    }
    return 0;
  }

  if (*cmd_field) {
    char* csv = nullptr;
    check(wunk_phase_field_csv(params.h, regime.c_str(), g, x_lo, x_hi, nx, pi_lo,
                               pi_hi, npi, &csv));
    write_file(fs::path(out_dir) / "phase_field.csv", take_string(csv));
    std::cout << (fs::path(out_dir) / "phase_field.csv").string() << "\n";
    return 0;
  }

  if (*cmd_thresh) {
    const json sh = cfg.scenario ? shock_of(*cfg.scenario) : json::object();
    char* out = nullptr;
    if (which == "delta-star") {
      check(wunk_guidance_threshold_json(params.h, sh.dump().c_str(), cfg.tol, cfg.step,
                                         &out));
    } else if (which == "g-star") {
      const double sigma_zlb = sh.value("sigma_zlb", 0.0);
      check(wunk_spending_threshold_json(params.h, sigma_zlb, cfg.tol, cfg.step, &out));
    } else if (which == "t-star") {
      check(wunk_zlb_threshold_json(params.h, sh.dump().c_str(), cfg.delta_max, cfg.grid,
                                    1e-2, cfg.step, &out));
    } else {
      throw cli_error{exit_config, "unknown threshold: " + which, {}};
    }
    std::cout << take_string(out) << "\n";
    return 0;
  }

  if (*cmd_statics) {
    char* out = nullptr;
    check(wunk_comparative_static_json(params.h, shock.c_str(), h_rel, &out));
    std::cout << take_string(out) << "\n";
    return 0;
  }

  if (*cmd_check) {
    char* out = nullptr;
    check(wunk_check_json(params.h, &out));
    json j = json::parse(take_string(out));
    if (cfg.statistics) {
      const auto& s = *cfg.statistics;
      for (const char* k : {"delta", "r_n", "lambda"})
        if (!s.contains(k))
          throw cli_error{exit_config, std::string("missing statistics key: ") + k, {}};
      char* st_out = nullptr;
      check(wunk_check_statistics_json(s.at("delta").get<double>(),
                                       s.at("r_n").get<double>(),
                                       s.at("lambda").get<double>(), &st_out));
      j["statistics"] = json::parse(take_string(st_out));
    }
    std::cout << j.dump() << "\n";
    return 0;
  }

  if (*cmd_disc) {
    double alpha = 0.0, pc = 0.0;
    check(wunk_loglin_coeffs(params.h, &alpha, &pc));
    json j{{"alpha", alpha}, {"phillips_coeff", pc}};
    if (cfg.discrete) {
      const auto& d = *cfg.discrete;
      for (const char* k : {"i", "pi_next", "r_n"})
        if (!d.contains(k))
          throw cli_error{exit_config, std::string("missing discrete key: ") + k, {}};
      const auto iv = d.at("i").get<std::vector<double>>();
      const auto pv = d.at("pi_next").get<std::vector<double>>();
      if (iv.size() != pv.size())
        throw cli_error{exit_config, "discrete keys i and pi_next must have equal length", {}};
      double y0 = 0.0, tail = 0.0;
      check(wunk_forward_solve(params.h, iv.data(), pv.data(), iv.size(),
                               d.at("r_n").get<double>(), &y0, &tail));
      j["forward_solve"] = json{{"y_hat0", y0}, {"tail_bound", tail}};
    }
    std::cout << j.dump() << "\n";
    return 0;
  }

  return 0;
}

} // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const cli_error& e) {
    if (!e.diagnostic.is_null())
      std::cout << e.diagnostic.dump() << "\n";
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_numeric;
  }
}
