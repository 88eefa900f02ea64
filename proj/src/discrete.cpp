#include "wunklab/discrete.hpp"
#include "wunklab/errors.hpp"

#include <cmath>

namespace wunklab::discrete {

using model::derive;
using model::validate;

loglin loglin_coeffs(const model_params& p) {
  const auto d = derive(p);
  loglin c;
  c.alpha = p.beta / (p.beta + p.mu_w * d.y_n);
  c.phillips_coeff = (p.epsilon - 1.0) / p.gamma;
  return c;
}

double euler_residual(double q, double y_t, double y_t1, double p_t, double p_t1,
                      const model_params& p) {
  validate(p);
  if (!(q > 0.0 && y_t > 0.0 && y_t1 > 0.0 && p_t > 0.0 && p_t1 > 0.0))
    throw error(errc::domain, "euler residual requires positive arguments");
  return q - p.mu_w * y_t - p.beta * (p_t * y_t) / (p_t1 * y_t1);
}

double phillips_residual(double p_prev, double p_t, double p_next, double y_t,
                         const model_params& p) {
  validate(p);
  if (!(p_prev > 0.0 && p_t > 0.0 && p_next > 0.0 && y_t > 0.0))
    throw error(errc::domain, "phillips residual requires positive arguments");
  const auto d = derive(p);
  const double g_now = p_t / p_prev;
  const double g_next = p_next / p_t;
  const double lhs = g_now * (g_now - 1.0);
  const double rhs = p.beta * g_next * (g_next - 1.0) +
                     ((p.epsilon - 1.0) / p.gamma) * (y_t / d.y_n - 1.0);
  return lhs - rhs;
}

forward_solution forward_solve_output(const discrete_path& path, const model_params& p,
                                      double r_n) {
  validate(p);
  if (path.i.size() != path.pi_next.size())
    throw error(errc::bad_argument, "path sequences must have equal length");
  const loglin c = loglin_coeffs(p);
  double sum = 0.0;
  double a_k = 1.0;
  for (size_t k = 0; k < path.i.size(); ++k) {
    sum += a_k * (path.i[k] - r_n - c.alpha * path.pi_next[k]);
    a_k *= c.alpha;
  }
  forward_solution out;
  out.y_hat0 = -sum;
  out.tail_bound = a_k; // alpha^{K+1}
  return out;
}

std::array<std::array<double, 2>, 2> one_step_map(const model_params& p, double dt) {
  validate(p);
  if (!(dt > 0.0))
    throw error(errc::bad_argument, "dt must be positive");
  const auto d = derive(p);
  const double beta = std::exp(-p.delta * dt);
  const double alpha = beta / (beta + p.mu_w * d.y_n * dt);
  const double pc = (p.epsilon - 1.0) / p.gamma;
  // solve the period-t optimality conditions for (y gap, inflation) at t+1:
  //   pi(t+1) = (pi(t) - pc*dt*yhat(t)) / beta
  //   yhat(t+1) = (yhat(t) + phi*pi(t)*dt)/alpha - pi(t+1)*dt
  std::array<std::array<double, 2>, 2> A;
  A[0][0] = 1.0 / alpha + pc * dt * dt / beta;
  A[0][1] = p.phi * dt / alpha - dt / beta;
  A[1][0] = -pc * dt / beta;
  A[1][1] = 1.0 / beta;
  return A;
}

} // namespace wunklab::discrete
