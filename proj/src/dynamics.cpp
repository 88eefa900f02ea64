#include "wunklab/dynamics.hpp"
#include "wunklab/errors.hpp"

#include <cmath>
#include <string>

namespace wunklab::dynamics {

using model::derive;
using model::derived;

namespace {

// real policy rate net of the natural rate, as a function of inflation
double real_rate_gap(const derived& d, const model_params& p, regime r, double pi) {
  if (r == regime::normal_rule)
    return (p.phi - 1.0) * pi; // r = r_n + (phi - 1) pi
  return -pi - d.r_n;          // i = 0 so r = -pi
}

} // namespace

velocity field_baseline(const state& s, const model_params& p, regime r, double g) {
  if (!(s.x > 0.0))
    throw error(errc::domain, "state x must be positive for the nonlinear field");
  if (g < 0.0)
    throw error(errc::bad_argument, "spending g must be nonnegative");
  if (p.eta == 0.0 && g != 0.0)
    throw error(errc::bad_argument, "spending g requires eta > 0");

  const derived d = derive(p);
  velocity v;
  const double rr = real_rate_gap(d, p, r, s.pi); // r - r_n
  if (p.eta == 0.0) {
    v.dx = s.x * (rr + p.mu_w * (s.x - d.y_n));
    v.dpi = p.delta * s.pi - (p.epsilon * p.kappa / (p.gamma * p.a)) * (s.x - d.y_n);
  } else {
    const double c = s.x;
    const double y = c + g;
    v.dx = c * (rr + p.mu_w * (c - d.c_n));
    const double wedge =
        1.0 - (p.epsilon / (p.epsilon - 1.0)) *
                  std::pow(p.kappa / p.a, 1.0 + p.eta) * std::pow(y, p.eta) * c;
    v.dpi = p.delta * s.pi + ((p.epsilon - 1.0) * y / (p.gamma * c)) * wedge;
  }
  return v;
}

velocity field_linearized_gov(const state& s, const model_params& p, regime r, double g) {
  const derived d = derive(p);
  const double markup = (p.epsilon - 1.0) / p.epsilon;
  const double scale = std::pow(markup, p.eta / (1.0 + p.eta));
  const double lam = (p.epsilon * p.kappa / (p.gamma * p.a)) * scale;

  velocity v;
  const double dc = s.x - d.c_n;
  if (r == regime::normal_rule)
    v.dx = d.c_n * ((p.phi - 1.0) * s.pi + p.mu_w * dc);
  else
    v.dx = d.c_n * (-s.pi - d.r_n + p.mu_w * dc);
  v.dpi = p.delta * s.pi - lam * ((1.0 + p.eta) * dc + p.eta * g);
  return v;
}

linear_system jacobian(const model_params& p, regime r, const state& at, double g) {
  const derived d = derive(p);
  velocity v = (p.eta == 0.0) ? field_baseline(at, p, r, g)
                              : field_linearized_gov(at, p, r, g);
  const double res = std::hypot(v.dx, v.dpi);
  if (res > 1e-9)
    throw error(errc::not_steady_state,
                "expansion point is not a steady state (velocity norm " +
                    std::to_string(res) + ")");

  linear_system L;
  L.x_star = at.x;
  L.pi_star = at.pi;
  if (p.eta == 0.0) {
    L.m11 = p.mu_w * at.x;
    L.m12 = (r == regime::normal_rule) ? (p.phi - 1.0) * at.x : -at.x;
    L.m21 = -p.epsilon * p.kappa / (p.gamma * p.a);
  } else {
    const double markup = (p.epsilon - 1.0) / p.epsilon;
    const double scale = std::pow(markup, p.eta / (1.0 + p.eta));
    L.m11 = p.mu_w * d.c_n;
    L.m12 = (r == regime::normal_rule) ? (p.phi - 1.0) * d.c_n : -d.c_n;
    L.m21 = -(1.0 + p.eta) * (p.epsilon * p.kappa / (p.gamma * p.a)) * scale;
  }
  L.m22 = p.delta;
  return L;
}

const char* regime_name(regime r) {
  switch (r) {
  case regime::normal_rule: return "normal_rule";
  case regime::zlb: return "zlb";
  case regime::peg: return "peg";
  }
  return "?";
}

regime regime_from_name(const std::string& name) {
  if (name == "normal_rule" || name == "normal") return regime::normal_rule;
  if (name == "zlb") return regime::zlb;
  if (name == "peg") return regime::peg;
  throw error(errc::bad_argument, "unknown regime: " + name);
}

} // namespace wunklab::dynamics
