#include "wunklab/scenarios.hpp"
#include "wunklab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace wunklab::scenarios {

using analysis::classify;
using analysis::invariant_lines;
using analysis::node_kind;
using analysis::steady_state;
using dynamics::jacobian;
using model::derive;
using model::derived;
using model::model_params;
using model::validate;

namespace {

constexpr double x_floor = 1e-9;

// precomputed vector field; linear = expansion around (x_n, 0, g = 0)
struct model_field {
  bool linear;
  bool zero_rate; // zlb / peg
  double phim1, mu_w, x_n, r_n, delta, eta, g;
  double lam0;    // eps*kappa/(gamma*a)
  double lamX;    // lam0 scaled by ((eps-1)/eps)^{eta/(1+eta)}
  double em1_over_gamma;
  double wedge_k; // (eps/(eps-1)) (kappa/a)^{1+eta}

  velocity operator()(const state& s) const {
    if (linear) {
      const double dc = s.x - x_n;
      const double dx = x_n * (zero_rate ? (-s.pi - r_n + mu_w * dc)
                                         : (phim1 * s.pi + mu_w * dc));
      return {dx, delta * s.pi - lamX * ((1.0 + eta) * dc + eta * g)};
    }
    const double rr = zero_rate ? (-s.pi - r_n) : phim1 * s.pi;
    if (eta == 0.0)
      return {s.x * (rr + mu_w * (s.x - x_n)),
              delta * s.pi - lam0 * (s.x - x_n)};
    const double c = s.x;
    const double y = c + g;
    const double wedge = 1.0 - wedge_k * std::pow(y, eta) * c;
    return {c * (rr + mu_w * (c - x_n)),
            delta * s.pi + em1_over_gamma * (y / c) * wedge};
  }
};

model_field make_field(const model_params& p, regime r, double g, bool linear) {
  const derived d = derive(p);
  model_field f;
  f.linear = linear;
  f.zero_rate = r != regime::normal_rule;
  f.phim1 = p.phi - 1.0;
  f.mu_w = p.mu_w;
  f.x_n = (linear || p.eta > 0.0) ? d.c_n : d.y_n;
  f.r_n = d.r_n;
  f.delta = p.delta;
  f.eta = p.eta;
  f.g = g;
  f.lam0 = p.epsilon * p.kappa / (p.gamma * p.a);
  f.lamX = f.lam0 * std::pow((p.epsilon - 1.0) / p.epsilon, p.eta / (1.0 + p.eta));
  f.em1_over_gamma = (p.epsilon - 1.0) / p.gamma;
  f.wedge_k = (p.epsilon / (p.epsilon - 1.0)) * std::pow(p.kappa / p.a, 1.0 + p.eta);
  return f;
}

// `guard` enforces x > x_floor; it is on for the nonlinear field (which
// divides by x) and off for linearized fields, where negative excursions are a
// legitimate approximation artifact
template <class F>
state rk4_back(F&& f, const state& s, double h, double t_to, bool guard = true) {
  auto ev = [&](const state& z) -> velocity {
    if (guard && !(z.x > x_floor))
      throw positivity_breach(t_to, "positivity breach: x <= 1e-9 near t = " +
                                        std::to_string(t_to));
    const velocity v = f(z);
    return {-v.dx, -v.dpi};
  };
  const velocity k1 = ev(s);
  const velocity k2 = ev({s.x + 0.5 * h * k1.dx, s.pi + 0.5 * h * k1.dpi});
  const velocity k3 = ev({s.x + 0.5 * h * k2.dx, s.pi + 0.5 * h * k2.dpi});
  const velocity k4 = ev({s.x + h * k3.dx, s.pi + h * k3.dpi});
  const state out{s.x + h * (k1.dx + 2.0 * (k2.dx + k3.dx) + k4.dx) / 6.0,
                  s.pi + h * (k1.dpi + 2.0 * (k2.dpi + k3.dpi) + k4.dpi) / 6.0};
  if (!std::isfinite(out.x) || !std::isfinite(out.pi) || (guard && !(out.x > x_floor)))
    throw positivity_breach(t_to, "positivity breach: x <= 1e-9 near t = " +
                                      std::to_string(t_to));
  return out;
}

long step_count(double length, double step) {
  const long n = static_cast<long>(std::ceil(length / step - 1e-12));
  return std::max(1L, n);
}

template <class F>
std::vector<sample> integrate_backward_samples(F&& f, const state& terminal,
                                               double t_start, double t_end,
                                               double step, regime tag,
                                               bool guard = true) {
  if (!(step > 0.0))
    throw error(errc::bad_argument, "step must be positive");
  if (!(terminal.x > 0.0))
    throw error(errc::domain, "terminal state must have x > 0");
  if (t_end < t_start)
    throw error(errc::bad_argument, "t_end must be >= t_start");

  std::vector<sample> out;
  const double length = t_end - t_start;
  if (length == 0.0) {
    out.push_back({t_end, terminal, tag});
    return out;
  }
  const long n = step_count(length, step);
  const double h = length / static_cast<double>(n);
  out.reserve(static_cast<size_t>(n) + 1);
  out.push_back({t_end, terminal, tag});
  state s = terminal;
  for (long k = 1; k <= n; ++k) {
    const double t = (k == n) ? t_start : t_end - static_cast<double>(k) * h;
    s = rk4_back(f, s, h, t, guard);
    out.push_back({t, s, tag});
  }
  std::reverse(out.begin(), out.end());
  return out;
}

// endpoint-only backward integration over [0, length]
template <class F>
state backward_endpoint(F&& f, const state& terminal, double length, double step,
                        bool guard = true) {
  if (length <= 0.0) return terminal;
  const long n = step_count(length, step);
  const double h = length / static_cast<double>(n);
  state s = terminal;
  for (long k = 1; k <= n; ++k)
    s = rk4_back(f, s, h, length - static_cast<double>(k) * h, guard);
  return s;
}

model_params shocked(const model_params& p, double sigma, std::optional<double> mu_w) {
  model_params q = p;
  q.sigma = sigma;
  if (mu_w) q.mu_w = *mu_w;
  validate(q);
  return q;
}

void validate_scenario(const model_params& p, const scenario& s) {
  if (!(s.T > 0.0))
    throw error(errc::invalid_param, "scenario T must be positive");
  if (s.Delta < 0.0)
    throw error(errc::invalid_param, "scenario Delta must be nonnegative");
  if (s.g < 0.0)
    throw error(errc::invalid_param, "scenario g must be nonnegative");
  if (s.kind != scenario_kind::forward_guidance && s.Delta != 0.0)
    throw error(errc::invalid_param, "Delta is only valid for forward_guidance");
  if (s.kind != scenario_kind::gov_spending && s.g != 0.0)
    throw error(errc::invalid_param, "g is only valid for gov_spending");
  if (s.kind == scenario_kind::gov_spending && !(p.eta > 0.0))
    throw error(errc::invalid_param, "gov_spending requires eta > 0");
  if (s.shock.mu_w_zlb && s.shock.sigma_zlb != s.shock.sigma_normal)
    throw error(errc::invalid_param,
                "at most one ZLB shock: mu_w_zlb requires sigma_zlb == sigma_normal");

  const model_params p_zlb = shocked(p, s.shock.sigma_zlb, s.shock.mu_w_zlb);
  if (!(derive(p_zlb).r_n < 0.0))
    throw error(errc::invalid_param,
                "ZLB phase requires a negative natural rate; adjust sigma_zlb or mu_w_zlb");
  if (s.kind == scenario_kind::forward_guidance) {
    const model_params p_norm = shocked(p, s.shock.sigma_normal, std::nullopt);
    if (!(derive(p_norm).r_n > 0.0))
      throw error(errc::invalid_param,
                  "guidance phase requires a positive natural rate under sigma_normal");
  }
}

} // namespace

trajectory integrate_backward(const field_fn& f, const state& terminal,
                              double t_start, double t_end, double step,
                              regime tag) {
  trajectory tr;
  tr.step = step;
  tr.samples = integrate_backward_samples(f, terminal, t_start, t_end, step, tag);
  return tr;
}

trajectory run_scenario(const model_params& p, const scenario& s, double step) {
  validate(p);
  validate_scenario(p, s);
  const derived d = derive(p);
  const bool lin = p.eta > 0.0;
  const state terminal{lin ? d.c_n : d.y_n, 0.0};
  const model_params p_zlb = shocked(p, s.shock.sigma_zlb, s.shock.mu_w_zlb);

  trajectory tr;
  tr.step = step;
  switch (s.kind) {
  case scenario_kind::zlb_episode: {
    const auto f = make_field(p_zlb, regime::zlb, 0.0, lin);
    tr.samples = integrate_backward_samples(f, terminal, 0.0, s.T, step, regime::zlb, !lin);
    break;
  }
  case scenario_kind::forward_guidance: {
    const model_params p_norm = shocked(p, s.shock.sigma_normal, std::nullopt);
    const auto fp = make_field(p_norm, regime::peg, 0.0, lin);
    const auto peg_part = integrate_backward_samples(fp, terminal, s.T, s.T + s.Delta,
                                                     step, regime::peg, !lin);
    const state joint = peg_part.front().s; // shared t = T sample, bitwise
    const auto fz = make_field(p_zlb, regime::zlb, 0.0, lin);
    tr.samples = integrate_backward_samples(fz, joint, 0.0, s.T, step, regime::zlb, !lin);
    tr.samples.insert(tr.samples.end(), peg_part.begin() + 1, peg_part.end());
    break;
  }
  case scenario_kind::gov_spending: {
    const auto f = make_field(p_zlb, regime::zlb, s.g, true);
    tr.samples =
        integrate_backward_samples(f, {d.c_n, 0.0}, 0.0, s.T, step, regime::zlb, false);
    break;
  }
  }
  return tr;
}

double multiplier(const model_params& p, double T, double g, double s, double step) {
  validate(p);
  if (!(p.eta > 0.0))
    throw error(errc::invalid_param, "multiplier requires eta > 0");
  if (!(s > 0.0))
    throw error(errc::bad_argument, "multiplier requires s > 0");
  if (g - 0.5 * s < 0.0)
    throw error(errc::bad_argument, "multiplier requires g - s/2 >= 0");
  if (!(T > 0.0))
    throw error(errc::bad_argument, "multiplier requires T > 0");
  const derived d = derive(p);
  if (!(d.r_n < 0.0))
    throw error(errc::invalid_param, "multiplier is evaluated at the ZLB: r_n must be negative");

  auto c0 = [&](double gv) {
    const auto f = make_field(p, regime::zlb, gv, true);
    return backward_endpoint(f, {d.c_n, 0.0}, T, step, false).x;
  };
  return 1.0 + (c0(g + 0.5 * s) - c0(g - 0.5 * s)) / s;
}

double multiplier_limit(const model_params& p) {
  validate(p);
  const double denom = p.mu_w * (p.delta * p.gamma * p.a / (p.epsilon * p.kappa)) *
                           std::pow(p.epsilon / (p.epsilon - 1.0), p.eta / (1.0 + p.eta)) -
                       (1.0 + p.eta);
  if (denom <= 0.0)
    throw error(errc::infinite_limit,
                "spending multiplier grows without bound (wealth condition fails)");
  return 1.0 + p.eta / denom;
}

namespace {

// signed-distance bisection shared by the guidance and spending thresholds
template <class Dist>
threshold_result bisect_threshold(Dist&& dist, double tol, double step,
                                  double bracket_cap) {
  int iters = 0;
  const double d0 = dist(0.0);
  ++iters;
  if (std::fabs(d0) < tol) return {0.0, std::fabs(d0), iters, step};
  double lo = 0.0, dlo = d0;
  double hi = 0.25;
  double dhi;
  for (;;) {
    dhi = dist(hi);
    ++iters;
    if ((dhi < 0.0) != (dlo < 0.0)) break;
    lo = hi;
    dlo = dhi;
    hi *= 2.0;
    if (hi > bracket_cap)
      throw error(errc::bracket, "threshold bracket failure: no sign change up to " +
                                     std::to_string(bracket_cap));
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double dm = dist(mid);
    ++iters;
    if (std::fabs(dm) < tol) return {mid, std::fabs(dm), iters, step};
    if ((dm < 0.0) == (dlo < 0.0)) {
      lo = mid;
      dlo = dm;
    } else {
      hi = mid;
    }
  }
  throw error(errc::bracket, "threshold bisection did not reach tolerance");
}

} // namespace

threshold_result guidance_threshold_nk(const model_params& p, const zlb_shock& shock,
                                       double tol, double step) {
  validate(p);
  if (p.mu_w != 0.0 || shock.mu_w_zlb)
    throw error(errc::invalid_param, "guidance threshold requires mu_w = 0");
  const model_params p_zlb = shocked(p, shock.sigma_zlb, std::nullopt);
  const model_params p_norm = shocked(p, shock.sigma_normal, std::nullopt);
  if (!(derive(p_zlb).r_n < 0.0))
    throw error(errc::invalid_param, "ZLB phase requires a negative natural rate");
  if (!(derive(p_norm).r_n > 0.0))
    throw error(errc::invalid_param, "guidance phase requires a positive natural rate");

  const state ss_z = steady_state(p_zlb, regime::zlb, 0.0);
  const auto L = jacobian(p_zlb, regime::zlb, ss_z, 0.0);
  const auto cls = classify(L);
  if (cls.kind != node_kind::saddle)
    throw error(errc::invalid_param, "ZLB system is not a saddle");
  const auto lines = invariant_lines(L);
  const auto v = lines.unstable.at(0).direction;

  const derived d = derive(p);
  const bool lin = p.eta > 0.0;
  const state terminal{lin ? d.c_n : d.y_n, 0.0};
  const auto fp = make_field(p_norm, regime::peg, 0.0, lin);
  auto dist = [&](double Delta) {
    const state E = backward_endpoint(fp, terminal, Delta, step, !lin);
    return v[0] * (E.pi - ss_z.pi) - v[1] * (E.x - ss_z.x);
  };
  return bisect_threshold(dist, tol, step, 512.0);
}

threshold_result spending_threshold_nk(const model_params& p, double sigma_zlb,
                                       double tol, double step) {
  validate(p);
  if (p.mu_w != 0.0)
    throw error(errc::invalid_param, "spending threshold requires mu_w = 0");
  if (!(p.eta > 0.0))
    throw error(errc::invalid_param, "spending threshold requires eta > 0");
  const model_params p_zlb = shocked(p, sigma_zlb, std::nullopt);
  const derived dz = derive(p_zlb);
  if (!(dz.r_n < 0.0))
    throw error(errc::invalid_param, "ZLB phase requires a negative natural rate");

  const state ss0 = steady_state(p_zlb, regime::zlb, 0.0);
  const auto L = jacobian(p_zlb, regime::zlb, ss0, 0.0);
  const auto cls = classify(L);
  if (cls.kind != node_kind::saddle)
    throw error(errc::invalid_param, "ZLB system is not a saddle");
  const auto v = invariant_lines(L).unstable.at(0).direction;

  const derived d = derive(p);
  auto dist = [&](double g) {
    const state ss = steady_state(p_zlb, regime::zlb, g);
    return v[0] * (0.0 - ss.pi) - v[1] * (d.c_n - ss.x);
  };
  return bisect_threshold(dist, tol, step, 1024.0);
}

tstar_result zlb_threshold_wunk(const model_params& p, const zlb_shock& shock,
                                double delta_max, int grid, double tol, double step) {
  validate(p);
  if (grid < 1)
    throw error(errc::bad_argument, "grid must be >= 1");
  if (!(tol > 0.0))
    throw error(errc::bad_argument, "tol must be positive");
  if (shock.mu_w_zlb && shock.sigma_zlb != shock.sigma_normal)
    throw error(errc::invalid_param,
                "at most one ZLB shock: mu_w_zlb requires sigma_zlb == sigma_normal");
  const model_params p_zlb = shocked(p, shock.sigma_zlb, shock.mu_w_zlb);
  const model_params p_peg = shocked(p, shock.sigma_normal, std::nullopt);
  if (!model::check_wunk(p_zlb).holds || !model::check_wunk(p_peg).holds)
    throw error(errc::invalid_param, "T* threshold requires the wealth condition to hold");
  if (!(derive(p_zlb).r_n < 0.0))
    throw error(errc::invalid_param, "ZLB phase requires a negative natural rate");
  if (!(derive(p_peg).r_n > 0.0))
    throw error(errc::invalid_param, "guidance phase requires a positive natural rate");

  const derived d = derive(p);
  const bool lin = p.eta > 0.0;
  const state terminal{lin ? d.c_n : d.y_n, 0.0};
  const state ss_f = steady_state(p_peg, regime::peg, 0.0);
  const auto fpeg = make_field(p_peg, regime::peg, 0.0, lin);

  if (delta_max <= 0.0) {
    // guidance durations beyond which the attained state stops moving
    constexpr double cap = 5000.0;
    state s = terminal;
    long k = 0;
    delta_max = cap;
    while (static_cast<double>(k) * step < cap) {
      if (std::hypot(s.x - ss_f.x, s.pi - ss_f.pi) < 1e-6) {
        delta_max = static_cast<double>(k) * step;
        break;
      }
      ++k;
      s = rk4_back(fpeg, s, step, static_cast<double>(k) * step, !lin);
    }
  }

  const auto fz = make_field(p_zlb, regime::zlb, 0.0, lin);
  double t_star = 0.0;
  for (int j = 0; j < grid; ++j) {
    const double Dj =
        (grid == 1) ? 0.0 : delta_max * static_cast<double>(j) / (grid - 1);
    const state E = backward_endpoint(fpeg, terminal, Dj, step, !lin);
    auto pi0 = [&](double T) { return backward_endpoint(fz, E, T, step, !lin).pi; };

    double t_hat = 0.0;
    if (E.pi > 0.0) {
      double lo = 0.0, hi = 1.0;
      while (pi0(hi) >= 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1024.0)
          throw error(errc::bracket, "T* search: inflation never turns negative");
      }
      while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (pi0(mid) >= 0.0)
          lo = mid;
        else
          hi = mid;
      }
      t_hat = hi;
    }
    t_star = std::max(t_star, t_hat);
  }

  tstar_result r;
  r.value = t_star;
  r.delta_max = delta_max;
  r.grid = grid;
  r.grid_resolution = (grid == 1) ? 0.0 : delta_max / (grid - 1);
  r.t_resolution = tol;
  r.step = step;
  return r;
}

std::string trajectory_csv(const trajectory& tr) {
  std::string out = "t,x,pi,regime\n";
  char buf[128];
  for (const auto& s : tr.samples) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%s\n", s.t, s.s.x, s.s.pi,
                  dynamics::regime_name(s.tag));
    out += buf;
  }
  return out;
}

} // namespace wunklab::scenarios
