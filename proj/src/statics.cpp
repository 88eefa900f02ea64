#include "wunklab/statics.hpp"
#include "wunklab/errors.hpp"

#include <cmath>

namespace wunklab::statics {

using analysis::steady_state;
using dynamics::regime;
using model::check_wunk;
using model::derive;
using model::derived;
using model::validate;

namespace {

struct pieces {
  double c_n, r_n, S, D, u;
};

pieces make_pieces(const model_params& p) {
  const derived d = derive(p);
  pieces q;
  q.c_n = d.c_n;
  q.r_n = d.r_n;
  const double X = std::pow((p.epsilon - 1.0) / p.epsilon, p.eta / (1.0 + p.eta));
  q.S = (p.epsilon * p.kappa / (p.delta * p.gamma * p.a)) * X;
  q.D = p.mu_w - (1.0 + p.eta) * q.S;
  q.u = p.mu_w;
  return q;
}

state zlb_ss(const model_params& p, double g) {
  return steady_state(p, regime::zlb, g);
}

verdict sign_verdict(bool pass_condition, bool any_zero) {
  if (any_zero) return verdict::inconclusive;
  return pass_condition ? verdict::pass : verdict::fail;
}

} // namespace

statics_report comparative_static(const model_params& p, shock_id shock, double h_rel) {
  validate(p);
  if (!(h_rel > 0.0))
    throw error(errc::bad_argument, "h_rel must be positive");
  if (!check_wunk(p).holds)
    throw error(errc::invalid_param, "comparative statics require the wealth condition");
  const pieces q = make_pieces(p);
  if (!(q.r_n < 0.0))
    throw error(errc::invalid_param, "permanent ZLB requires a negative natural rate");
  if (shock == shock_id::spending && !(p.eta > 0.0))
    throw error(errc::invalid_param, "spending shock requires eta > 0");

  statics_report rep;
  rep.shock = shock;
  rep.base = zlb_ss(p, 0.0);
  rep.d_y_d_g = 0.0;

  // chain pieces of x = c_n + (r_n + S*eta*g)/D at g = 0, pi = -r_n + u*(x - c_n)
  double dc_n = 0.0, dS = 0.0, du = 0.0;
  double theta = 0.0;
  switch (shock) {
  case shock_id::mu_w:
    du = 1.0;
    theta = p.mu_w;
    break;
  case shock_id::kappa:
    dc_n = -q.c_n / p.kappa;
    dS = q.S / p.kappa;
    theta = p.kappa;
    break;
  case shock_id::gamma:
    dS = -q.S / p.gamma;
    theta = p.gamma;
    break;
  case shock_id::technology:
    dc_n = q.c_n / p.a;
    dS = -q.S / p.a;
    theta = p.a;
    break;
  case shock_id::spending:
    theta = 0.0;
    break;
  }

  if (shock == shock_id::spending) {
    rep.d_x = q.S * p.eta / q.D;
    rep.d_pi = q.u * rep.d_x;
    rep.d_y_d_g = 1.0 + rep.d_x;
  } else {
    const double dr_n = -du * q.c_n - q.u * dc_n;
    const double dD = du - (1.0 + p.eta) * dS;
    rep.d_x = dc_n + (dr_n * q.D - q.r_n * dD) / (q.D * q.D);
    rep.d_pi = -dr_n + du * (rep.base.x - q.c_n) + q.u * (rep.d_x - dc_n);
  }

  const double h = h_rel * (std::fabs(theta) > 0.0 ? std::fabs(theta) : 1.0);
  rep.h = h;
  auto ss_at = [&](double dt) {
    model_params pp = p;
    double g = 0.0;
    switch (shock) {
    case shock_id::mu_w: pp.mu_w = p.mu_w + dt; break;
    case shock_id::kappa: pp.kappa = p.kappa + dt; break;
    case shock_id::gamma: pp.gamma = p.gamma + dt; break;
    case shock_id::technology: pp.a = p.a + dt; break;
    case shock_id::spending: g = dt; break;
    }
    return zlb_ss(pp, g);
  };
  const state plus = ss_at(h);
  const state minus = ss_at(shock == shock_id::spending ? 0.0 : -h);
  if (shock == shock_id::spending) {
    // one-sided at g = 0 would lose accuracy; use g = h as the center instead
    const state p2 = ss_at(2.0 * h);
    rep.fd_x = (p2.x - rep.base.x) / (2.0 * h);
    rep.fd_pi = (p2.pi - rep.base.pi) / (2.0 * h);
    rep.shifted = plus;
  } else {
    rep.fd_x = (plus.x - minus.x) / (2.0 * h);
    rep.fd_pi = (plus.pi - minus.pi) / (2.0 * h);
    rep.shifted = plus;
  }

  switch (shock) {
  case shock_id::mu_w:
    rep.paradox_name = "thrift";
    rep.paradox = sign_verdict(rep.d_x < 0.0 && rep.d_pi < 0.0,
                               rep.d_x == 0.0 || rep.d_pi == 0.0);
    break;
  case shock_id::kappa:
  case shock_id::technology:
    rep.paradox_name = "toil";
    rep.paradox =
        (shock == shock_id::kappa)
            ? sign_verdict(rep.d_x > 0.0, rep.d_x == 0.0)
            : sign_verdict(rep.d_x < 0.0, rep.d_x == 0.0);
    break;
  case shock_id::gamma:
    rep.paradox_name = "flexibility";
    rep.paradox = sign_verdict(rep.d_x > 0.0, rep.d_x == 0.0);
    break;
  case shock_id::spending:
    rep.paradox_name = "spending";
    rep.paradox = sign_verdict(rep.d_x > 0.0 && rep.d_y_d_g > 1.0,
                               rep.d_x == 0.0);
    break;
  }
  return rep;
}

shock_id shock_from_name(const std::string& name) {
  if (name == "mu_w") return shock_id::mu_w;
  if (name == "kappa") return shock_id::kappa;
  if (name == "gamma") return shock_id::gamma;
  if (name == "a" || name == "technology") return shock_id::technology;
  if (name == "g" || name == "spending") return shock_id::spending;
  throw error(errc::bad_argument, "unknown shock: " + name);
}

const char* shock_name(shock_id s) {
  switch (s) {
  case shock_id::mu_w: return "mu_w";
  case shock_id::kappa: return "kappa";
  case shock_id::gamma: return "gamma";
  case shock_id::technology: return "a";
  case shock_id::spending: return "g";
  }
  return "?";
}

const char* verdict_name(verdict v) {
  switch (v) {
  case verdict::pass: return "pass";
  case verdict::fail: return "fail";
  case verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

} // namespace wunklab::statics
