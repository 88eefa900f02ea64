#include "wunklab.h"

#include "wunklab/analysis.hpp"
#include "wunklab/discrete.hpp"
#include "wunklab/dynamics.hpp"
#include "wunklab/errors.hpp"
#include "wunklab/params.hpp"
#include "wunklab/scenarios.hpp"
#include "wunklab/statics.hpp"

#include <cstring>
#include <json.hpp>
#include <new>
#include <string>

using nlohmann::json;
namespace wl = wunklab;

struct wunk_params {
  wl::model::model_params p;
};

struct wunk_trajectory {
  wl::scenarios::trajectory tr;
};

namespace {

thread_local std::string t_last_error;

wunk_status status_of(wl::errc c) {
  switch (c) {
  case wl::errc::ok: return WUNK_OK;
  case wl::errc::invalid_param: return WUNK_ERR_INVALID_PARAM;
  case wl::errc::json: return WUNK_ERR_JSON;
  case wl::errc::domain: return WUNK_ERR_DOMAIN;
  case wl::errc::not_steady_state: return WUNK_ERR_NOT_STEADY_STATE;
  case wl::errc::boundary: return WUNK_ERR_BOUNDARY;
  case wl::errc::repeated_eigenvalue: return WUNK_ERR_REPEATED_EIGENVALUE;
  case wl::errc::complex_eigenvalue: return WUNK_ERR_COMPLEX_EIGENVALUE;
  case wl::errc::positivity: return WUNK_ERR_POSITIVITY;
  case wl::errc::bracket: return WUNK_ERR_BRACKET;
  case wl::errc::infinite_limit: return WUNK_ERR_INFINITE_LIMIT;
  case wl::errc::nonpositive_output: return WUNK_ERR_NONPOSITIVE_OUTPUT;
  case wl::errc::bad_argument: return WUNK_ERR_BAD_ARGUMENT;
  case wl::errc::internal: return WUNK_ERR_INTERNAL;
  }
  return WUNK_ERR_INTERNAL;
}

template <class Fn>
wunk_status guarded(Fn&& fn) {
  try {
    fn();
    return WUNK_OK;
  } catch (const wl::error& e) {
    t_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return WUNK_ERR_INTERNAL;
  } catch (...) {
    t_last_error = "unknown failure";
    return WUNK_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new (std::nothrow) char[s.size() + 1];
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

wunk_status require(bool cond, const char* what) {
  if (cond) return WUNK_OK;
  t_last_error = what;
  return WUNK_ERR_BAD_ARGUMENT;
}

void reject_unknown(const json& j, std::initializer_list<const char*> keys,
                    const char* where) {
  if (!j.is_object())
    throw wl::error(wl::errc::json, std::string(where) + " must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : keys)
      if (it.key() == k) known = true;
    if (!known)
      throw wl::error(wl::errc::json,
                      std::string("unknown key in ") + where + ": " + it.key());
  }
}

wl::scenarios::zlb_shock shock_from_json(const json& j) {
  reject_unknown(j, {"sigma_zlb", "sigma_normal", "mu_w_zlb"}, "shock");
  wl::scenarios::zlb_shock sh;
  sh.sigma_zlb = j.value("sigma_zlb", 0.0);
  sh.sigma_normal = j.value("sigma_normal", 0.0);
  if (j.contains("mu_w_zlb")) sh.mu_w_zlb = j.at("mu_w_zlb").get<double>();
  return sh;
}

wl::scenarios::scenario scenario_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw wl::error(wl::errc::json, std::string("scenario JSON parse failure: ") + e.what());
  }
  reject_unknown(j, {"kind", "T", "Delta", "g", "sigma_zlb", "sigma_normal", "mu_w_zlb"},
                 "scenario");
  wl::scenarios::scenario s;
  if (!j.contains("kind"))
    throw wl::error(wl::errc::json, "missing scenario key: kind");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "zlb_episode")
    s.kind = wl::scenarios::scenario_kind::zlb_episode;
  else if (kind == "forward_guidance")
    s.kind = wl::scenarios::scenario_kind::forward_guidance;
  else if (kind == "gov_spending")
    s.kind = wl::scenarios::scenario_kind::gov_spending;
  else
    throw wl::error(wl::errc::json, "unknown scenario kind: " + kind);
  if (!j.contains("T"))
    throw wl::error(wl::errc::json, "missing scenario key: T");
  s.T = j.at("T").get<double>();
  s.Delta = j.value("Delta", 0.0);
  s.g = j.value("g", 0.0);
  s.shock.sigma_zlb = j.value("sigma_zlb", 0.0);
  s.shock.sigma_normal = j.value("sigma_normal", 0.0);
  if (j.contains("mu_w_zlb")) s.shock.mu_w_zlb = j.at("mu_w_zlb").get<double>();
  return s;
}

json line_json(const wl::analysis::line& ln) {
  return json{{"point", {ln.point.x, ln.point.pi}},
              {"direction", {ln.direction[0], ln.direction[1]}},
              {"eigenvalue", ln.eigenvalue},
              {"stable", ln.stable}};
}

json nullcline_json(const wl::analysis::nullcline& n) {
  if (n.vertical) return json{{"kind", "vertical"}, {"x", n.x_value}};
  return json{{"kind", "line"}, {"slope", n.slope}, {"intercept", n.intercept}};
}

} // namespace

extern "C" {

const char* wunk_last_error(void) { return t_last_error.c_str(); }

void wunk_string_free(char* s) { delete[] s; }

wunk_status wunk_params_parse(const char* text, wunk_params** out) {
  if (auto st = require(text && out, "null argument")) return st;
  return guarded([&] {
    auto p = wl::model::params_from_json(text);
    *out = new wunk_params{p};
  });
}

void wunk_params_free(wunk_params* p) { delete p; }

wunk_status wunk_params_json(const wunk_params* p, char** out) {
  if (auto st = require(p && out, "null argument")) return st;
  return guarded([&] { *out = dup_string(wl::model::params_to_json(p->p)); });
}

wunk_status wunk_derive_json(const wunk_params* p, char** out) {
  if (auto st = require(p && out, "null argument")) return st;
  return guarded([&] {
    const auto d = wl::model::derive(p->p);
    json j{{"y_n", d.y_n},
           {"c_n", d.c_n},
           {"r_n", d.r_n},
           {"phillips_slope", d.phillips_slope}};
    *out = dup_string(j.dump());
  });
}

wunk_status wunk_check_json(const wunk_params* p, char** out) {
  if (auto st = require(p && out, "null argument")) return st;
  return guarded([&] {
    const auto r = wl::model::check_wunk(p->p);
    json j{{"holds", r.holds},
           {"lhs", r.lhs},
           {"rhs", r.rhs},
           {"positive_natural_rate_ok", r.positive_natural_rate_ok}};
    *out = dup_string(j.dump());
  });
}

wunk_status wunk_check_statistics_json(double delta, double r_n, double lambda,
                                       char** out) {
  if (auto st = require(out != nullptr, "null argument")) return st;
  return guarded([&] {
    const auto r = wl::model::check_wunk_statistics(delta, r_n, lambda);
    json j{{"holds", r.holds}, {"lhs", r.lhs}, {"rhs", r.rhs}};
    *out = dup_string(j.dump());
  });
}

wunk_status wunk_steady_state(const wunk_params* p, const char* regime, double g,
                              double* x, double* pi) {
  if (auto st = require(p && regime && x && pi, "null argument")) return st;
  return guarded([&] {
    const auto r = wl::dynamics::regime_from_name(regime);
    const auto ss = wl::analysis::steady_state(p->p, r, g);
    *x = ss.x;
    *pi = ss.pi;
  });
}

wunk_status wunk_classify_json(const wunk_params* p, const char* regime, double g,
                               char** out) {
  if (auto st = require(p && regime && out, "null argument")) return st;
  return guarded([&] {
    const auto r = wl::dynamics::regime_from_name(regime);
    const auto ss = wl::analysis::steady_state(p->p, r, g);
    const auto L = wl::dynamics::jacobian(p->p, r, ss, g);
    const auto c = wl::analysis::classify(L);
    json j{{"regime", regime},
           {"steady_state", {ss.x, ss.pi}},
           {"matrix", {{L.m11, L.m12}, {L.m21, L.m22}}},
           {"trace", c.trace},
           {"det", c.det},
           {"discriminant", c.discriminant},
           {"kind", wl::analysis::node_kind_name(c.kind)},
           {"eigenvalues",
            {{{"re", c.eigenvalues[0].real()}, {"im", c.eigenvalues[0].imag()}},
             {{"re", c.eigenvalues[1].real()}, {"im", c.eigenvalues[1].imag()}}}}};
    if (c.real_eigenvalues) {
      const auto lines = wl::analysis::invariant_lines(L);
      json stable = json::array();
      json unstable = json::array();
      for (const auto& ln : lines.stable) stable.push_back(line_json(ln));
      for (const auto& ln : lines.unstable) unstable.push_back(line_json(ln));
      j["lines"] = json{{"stable", stable}, {"unstable", unstable}};
    }
    *out = dup_string(j.dump());
  });
}

wunk_status wunk_nullclines_json(const wunk_params* p, const char* regime, double g,
                                 char** out) {
  if (auto st = require(p && regime && out, "null argument")) return st;
  return guarded([&] {
    const auto r = wl::dynamics::regime_from_name(regime);
    const auto n = wl::analysis::nullclines(p->p, r, g);
    json j{{"euler", nullcline_json(n.euler)}, {"phillips", nullcline_json(n.phillips)}};
    *out = dup_string(j.dump());
  });
}

wunk_status wunk_nullclines_csv(const wunk_params* p, const char* regime, double g,
                                char** out) {
  if (auto st = require(p && regime && out, "null argument")) return st;
  return guarded([&] {
    const auto r = wl::dynamics::regime_from_name(regime);
    const auto n = wl::analysis::nullclines(p->p, r, g);
    char buf[160];
    std::string csv = "kind,slope,intercept\n";
    auto row = [&](const char* name, const wl::analysis::nullcline& nc) {
      if (nc.vertical)
        std::snprintf(buf, sizeof(buf), "%s_vertical,inf,%.17g\n", name, nc.x_value);
      else
        std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g\n", name, nc.slope, nc.intercept);
      csv += buf;
    };
    row("euler", n.euler);
    row("phillips", n.phillips);
    *out = dup_string(csv);
  });
}

wunk_status wunk_phase_field_csv(const wunk_params* p, const char* regime, double g,
                                 double x_lo, double x_hi, int nx,
                                 double pi_lo, double pi_hi, int npi, char** out) {
  if (auto st = require(p && regime && out, "null argument")) return st;
  return guarded([&] {
    const auto r = wl::dynamics::regime_from_name(regime);
    const auto grid =
        wl::analysis::phase_field(p->p, r, g, x_lo, x_hi, nx, pi_lo, pi_hi, npi);
    std::string csv = "x,pi,dx,dpi\n";
    char buf[200];
    for (const auto& fs : grid) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", fs.s.x, fs.s.pi,
                    fs.v.dx, fs.v.dpi);
      csv += buf;
    }
    *out = dup_string(csv);
  });
}

wunk_status wunk_scenario_run(const wunk_params* p, const char* scenario_json,
                              double step, wunk_trajectory** out) {
  if (auto st = require(p && scenario_json && out, "null argument")) return st;
  return guarded([&] {
    const auto s = scenario_from_json(scenario_json);
    auto tr = wl::scenarios::run_scenario(p->p, s, step);
    *out = new wunk_trajectory{std::move(tr)};
  });
}

void wunk_trajectory_free(wunk_trajectory* t) { delete t; }

wunk_status wunk_trajectory_size(const wunk_trajectory* t, size_t* n) {
  if (auto st = require(t && n, "null argument")) return st;
  *n = t->tr.samples.size();
  return WUNK_OK;
}

wunk_status wunk_trajectory_sample(const wunk_trajectory* t, size_t idx, double* time,
                                   double* x, double* pi, int* regime_tag) {
  if (auto st = require(t && time && x && pi && regime_tag, "null argument")) return st;
  if (idx >= t->tr.samples.size()) {
    t_last_error = "sample index out of range";
    return WUNK_ERR_BAD_ARGUMENT;
  }
  const auto& s = t->tr.samples[idx];
  *time = s.t;
  *x = s.s.x;
  *pi = s.s.pi;
  *regime_tag = static_cast<int>(s.tag);
  return WUNK_OK;
}

wunk_status wunk_trajectory_csv(const wunk_trajectory* t, char** out) {
  if (auto st = require(t && out, "null argument")) return st;
  return guarded([&] { *out = dup_string(wl::scenarios::trajectory_csv(t->tr)); });
}

wunk_status wunk_multiplier(const wunk_params* p, double T, double g, double s,
                            double step, double* out) {
  if (auto st = require(p && out, "null argument")) return st;
  return guarded([&] { *out = wl::scenarios::multiplier(p->p, T, g, s, step); });
}

wunk_status wunk_multiplier_limit(const wunk_params* p, double* out) {
  if (auto st = require(p && out, "null argument")) return st;
  return guarded([&] { *out = wl::scenarios::multiplier_limit(p->p); });
}

wunk_status wunk_guidance_threshold_json(const wunk_params* p, const char* shock_json,
                                         double tol, double step, char** out) {
  if (auto st = require(p && shock_json && out, "null argument")) return st;
  return guarded([&] {
    json js;
    try {
      js = json::parse(shock_json);
    } catch (const json::exception& e) {
      throw wl::error(wl::errc::json, std::string("shock JSON parse failure: ") + e.what());
    }
    const auto sh = shock_from_json(js);
    const auto r = wl::scenarios::guidance_threshold_nk(p->p, sh, tol, step);
    json j{{"value", r.value},
           {"residual", r.residual},
           {"iterations", r.iterations},
           {"step", r.step}};
    *out = dup_string(j.dump());
  });
}

wunk_status wunk_spending_threshold_json(const wunk_params* p, double sigma_zlb,
                                         double tol, double step, char** out) {
  if (auto st = require(p && out, "null argument")) return st;
  return guarded([&] {
    const auto r = wl::scenarios::spending_threshold_nk(p->p, sigma_zlb, tol, step);
    json j{{"value", r.value},
           {"residual", r.residual},
           {"iterations", r.iterations},
           {"step", r.step}};
    *out = dup_string(j.dump());
  });
}

wunk_status wunk_zlb_threshold_json(const wunk_params* p, const char* shock_json,
                                    double delta_max, int grid, double tol,
                                    double step, char** out) {
  if (auto st = require(p && shock_json && out, "null argument")) return st;
  return guarded([&] {
    json js;
    try {
      js = json::parse(shock_json);
    } catch (const json::exception& e) {
      throw wl::error(wl::errc::json, std::string("shock JSON parse failure: ") + e.what());
    }
    const auto sh = shock_from_json(js);
    const auto r = wl::scenarios::zlb_threshold_wunk(p->p, sh, delta_max, grid, tol, step);
    json j{{"value", r.value},
           {"delta_max", r.delta_max},
           {"grid", r.grid},
           {"grid_resolution", r.grid_resolution},
           {"t_resolution", r.t_resolution},
           {"step", r.step}};
    *out = dup_string(j.dump());
  });
}

wunk_status wunk_comparative_static_json(const wunk_params* p, const char* shock,
                                         double h_rel, char** out) {
  if (auto st = require(p && shock && out, "null argument")) return st;
  return guarded([&] {
    const auto id = wl::statics::shock_from_name(shock);
    const auto rep = wl::statics::comparative_static(p->p, id, h_rel);
    json j{{"shock", wl::statics::shock_name(rep.shock)},
           {"base", {rep.base.x, rep.base.pi}},
           {"shifted", {rep.shifted.x, rep.shifted.pi}},
           {"h", rep.h},
           {"d_x", rep.d_x},
           {"d_pi", rep.d_pi},
           {"fd_x", rep.fd_x},
           {"fd_pi", rep.fd_pi},
           {"paradox", rep.paradox_name},
           {"verdict", wl::statics::verdict_name(rep.paradox)}};
    if (rep.shock == wl::statics::shock_id::spending) j["d_y_d_g"] = rep.d_y_d_g;
    *out = dup_string(j.dump());
  });
}

wunk_status wunk_loglin_coeffs(const wunk_params* p, double* alpha,
                               double* phillips_coeff) {
  if (auto st = require(p && alpha && phillips_coeff, "null argument")) return st;
  return guarded([&] {
    const auto c = wl::discrete::loglin_coeffs(p->p);
    *alpha = c.alpha;
    *phillips_coeff = c.phillips_coeff;
  });
}

wunk_status wunk_euler_residual(const wunk_params* p, double q, double y_t,
                                double y_t1, double p_t, double p_t1, double* out) {
  if (auto st = require(p && out, "null argument")) return st;
  return guarded([&] { *out = wl::discrete::euler_residual(q, y_t, y_t1, p_t, p_t1, p->p); });
}

wunk_status wunk_phillips_residual(const wunk_params* p, double p_prev, double p_t,
                                   double p_next, double y_t, double* out) {
  if (auto st = require(p && out, "null argument")) return st;
  return guarded(
      [&] { *out = wl::discrete::phillips_residual(p_prev, p_t, p_next, y_t, p->p); });
}

wunk_status wunk_forward_solve(const wunk_params* p, const double* i,
                               const double* pi_next, size_t n, double r_n,
                               double* y_hat0, double* tail_bound) {
  if (auto st = require(p && y_hat0 && tail_bound, "null argument")) return st;
  if (n > 0 && (!i || !pi_next)) {
    t_last_error = "null sequence";
    return WUNK_ERR_BAD_ARGUMENT;
  }
  return guarded([&] {
    wl::discrete::discrete_path path;
    if (n > 0) {
      path.i.assign(i, i + n);
      path.pi_next.assign(pi_next, pi_next + n);
    }
    const auto sol = wl::discrete::forward_solve_output(path, p->p, r_n);
    *y_hat0 = sol.y_hat0;
    *tail_bound = sol.tail_bound;
  });
}

} // extern "C"
