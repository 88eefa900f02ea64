#include "wunklab/analysis.hpp"
#include "wunklab/errors.hpp"

#include <cmath>
#include <string>

namespace wunklab::analysis {

using dynamics::field_baseline;
using dynamics::field_linearized_gov;
using model::derive;
using model::derived;

namespace {

struct slopes {
  double sbar;  // eps*kappa/(delta*gamma*a)
  double scale; // ((eps-1)/eps)^{eta/(1+eta)}
  double S;     // sbar * scale, steady-state Phillips coefficient per gap unit
  double x_n;   // natural x (y_n or c_n)
};

slopes make_slopes(const model_params& p, const derived& d) {
  slopes s;
  s.sbar = p.epsilon * p.kappa / (p.delta * p.gamma * p.a);
  s.scale = std::pow((p.epsilon - 1.0) / p.epsilon, p.eta / (1.0 + p.eta));
  s.S = s.sbar * s.scale;
  s.x_n = (p.eta == 0.0) ? d.y_n : d.c_n;
  return s;
}

} // namespace

state steady_state(const model_params& p, regime r, double g) {
  const derived d = derive(p);
  if (g < 0.0)
    throw error(errc::bad_argument, "spending g must be nonnegative");
  if (p.eta == 0.0 && g != 0.0)
    throw error(errc::bad_argument, "spending g requires eta > 0");
  const slopes sl = make_slopes(p, d);

  state ss;
  if (r == regime::normal_rule) {
    if (g == 0.0) {
      ss = {sl.x_n, 0.0};
    } else {
      // linearized system: mu_w dc + (phi-1) pi = 0,
      //                    delta pi - lam((1+eta) dc + eta g) = 0
      const double lam = p.delta * sl.S;
      const double det = p.mu_w * p.delta + (p.phi - 1.0) * lam * (1.0 + p.eta);
      if (std::fabs(det) < 1e-14)
        throw error(errc::boundary, "degenerate normal-rule steady state (singular system)");
      const double dc = -(p.phi - 1.0) * lam * p.eta * g / det;
      ss = {d.c_n + dc, p.mu_w * lam * p.eta * g / det};
    }
  } else {
    const double denom = p.mu_w - (1.0 + p.eta) * sl.S;
    if (std::fabs(denom) < 1e-12)
      throw error(errc::boundary,
                  "degenerate steady state: mu_w at the wealth-condition boundary");
    const double dc = (d.r_n + sl.S * p.eta * g) / denom;
    ss = {sl.x_n + dc, -d.r_n + p.mu_w * dc};
  }
  if (!(ss.x > 0.0))
    throw error(errc::nonpositive_output,
                "steady state has nonpositive x = " + std::to_string(ss.x));
  return ss;
}

classification classify(const linear_system& L) {
  classification c;
  c.trace = L.m11 + L.m22;
  c.det = L.m11 * L.m22 - L.m12 * L.m21;
  c.discriminant = c.trace * c.trace - 4.0 * c.det;

  if (std::fabs(c.det) < 1e-14)
    throw error(errc::boundary, "classification boundary: determinant within 1e-14 of zero");
  if (c.trace == 0.0 && c.det > 0.0) {
    c.kind = node_kind::center;
    c.real_eigenvalues = false;
    const double w = std::sqrt(c.det);
    c.eigenvalues = {std::complex<double>(0.0, -w), std::complex<double>(0.0, w)};
    return c;
  }
  if (std::fabs(c.trace) < 1e-14)
    throw error(errc::boundary, "classification boundary: trace within 1e-14 of zero");
  if (c.det > 0.0 && std::fabs(c.discriminant) < 1e-12)
    throw error(errc::repeated_eigenvalue,
                "repeated eigenvalue: discriminant within 1e-12 of zero");

  if (c.discriminant > 0.0) {
    c.real_eigenvalues = true;
    const double sq = std::sqrt(c.discriminant);
    const double mu1 = 0.5 * (c.trace - sq);
    const double mu2 = 0.5 * (c.trace + sq);
    c.eigenvalues = {std::complex<double>(mu1, 0.0), std::complex<double>(mu2, 0.0)};
    for (int i = 0; i < 2; ++i) {
      const double mu = c.eigenvalues[i].real();
      // rows of (M - mu I) are parallel; take the better-conditioned kernel vector
      double v1[2] = {L.m12, mu - L.m11};
      double v2[2] = {mu - L.m22, L.m21};
      double* v = (std::hypot(v1[0], v1[1]) >= std::hypot(v2[0], v2[1])) ? v1 : v2;
      double n = std::hypot(v[0], v[1]);
      if (n == 0.0)
        throw error(errc::internal, "zero eigenvector");
      double s = 1.0 / n;
      if (v[0] < 0.0 || (v[0] == 0.0 && v[1] < 0.0)) s = -s;
      c.eigenvectors[i] = {v[0] * s, v[1] * s};
    }
  } else {
    c.real_eigenvalues = false;
    const double w = 0.5 * std::sqrt(-c.discriminant);
    c.eigenvalues = {std::complex<double>(0.5 * c.trace, -w),
                     std::complex<double>(0.5 * c.trace, w)};
  }

  if (c.det < 0.0)
    c.kind = node_kind::saddle;
  else if (c.trace > 0.0)
    c.kind = (c.discriminant > 0.0) ? node_kind::nodal_source : node_kind::spiral_source;
  else
    c.kind = (c.discriminant > 0.0) ? node_kind::nodal_sink : node_kind::spiral_sink;
  return c;
}

invariant_lines_result invariant_lines(const linear_system& L) {
  const classification c = classify(L);
  if (!c.real_eigenvalues)
    throw error(errc::complex_eigenvalue,
                "invariant lines undefined: complex eigenvalues");
  invariant_lines_result r;
  for (int i = 0; i < 2; ++i) {
    line ln;
    ln.point = {L.x_star, L.pi_star};
    ln.direction = c.eigenvectors[i];
    ln.eigenvalue = c.eigenvalues[i].real();
    ln.stable = ln.eigenvalue < 0.0;
    if (ln.stable)
      r.stable.push_back(ln);
    else
      r.unstable.push_back(ln);
  }
  return r;
}

nullcline_pair nullclines(const model_params& p, regime r, double g) {
  const derived d = derive(p);
  if (g < 0.0)
    throw error(errc::bad_argument, "spending g must be nonnegative");
  if (p.eta == 0.0 && g != 0.0)
    throw error(errc::bad_argument, "spending g requires eta > 0");
  const slopes sl = make_slopes(p, d);

  nullcline_pair out;
  // pricing nullcline: pi = phillips_slope*(x - x_n) + S*eta*g
  out.phillips.slope = d.phillips_slope;
  out.phillips.intercept = -d.phillips_slope * sl.x_n + sl.S * p.eta * g;

  if (r == regime::normal_rule) {
    if (p.phi == 1.0) {
      if (p.mu_w == 0.0)
        throw error(errc::boundary,
                    "Euler nullcline degenerate: phi = 1 with mu_w = 0");
      out.euler.vertical = true;
      out.euler.x_value = sl.x_n;
    } else {
      out.euler.slope = -p.mu_w / (p.phi - 1.0);
      out.euler.intercept = p.mu_w * sl.x_n / (p.phi - 1.0);
    }
  } else {
    out.euler.slope = p.mu_w;
    out.euler.intercept = -d.r_n - p.mu_w * sl.x_n;
  }
  return out;
}

std::vector<field_sample> phase_field(const model_params& p, regime r, double g,
                                      double x_lo, double x_hi, int nx,
                                      double pi_lo, double pi_hi, int npi) {
  if (nx < 0 || npi < 0)
    throw error(errc::bad_argument, "grid counts must be nonnegative");
  std::vector<field_sample> out;
  if (nx == 0 || npi == 0) return out;
  if (!(x_lo > 0.0) || !(x_hi > 0.0))
    throw error(errc::domain, "phase-field grid must satisfy x > 0");

  auto coord = [](double lo, double hi, int n, int i) {
    return (n == 1) ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  };
  out.reserve(static_cast<size_t>(nx) * npi);
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < npi; ++j) {
      field_sample fs;
      fs.s = {coord(x_lo, x_hi, nx, i), coord(pi_lo, pi_hi, npi, j)};
      fs.v = (p.eta == 0.0) ? field_baseline(fs.s, p, r, g)
                            : field_linearized_gov(fs.s, p, r, g);
      out.push_back(fs);
    }
  }
  return out;
}

const char* node_kind_name(node_kind k) {
  switch (k) {
  case node_kind::saddle: return "saddle";
  case node_kind::nodal_source: return "nodal_source";
  case node_kind::spiral_source: return "spiral_source";
  case node_kind::nodal_sink: return "nodal_sink";
  case node_kind::spiral_sink: return "spiral_sink";
  case node_kind::center: return "center";
  }
  return "?";
}

} // namespace wunklab::analysis
