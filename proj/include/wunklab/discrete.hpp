#ifndef WUNKLAB_DISCRETE_HPP
#define WUNKLAB_DISCRETE_HPP

#include "wunklab/params.hpp"

#include <array>
#include <vector>

namespace wunklab::discrete {

using model::model_params;

struct loglin {
  double alpha;          // beta / (beta + mu_w * y_n): Euler discounting
  double phillips_coeff; // (eps - 1) / gamma
};

loglin loglin_coeffs(const model_params& p);

// q - mu_w*y_t - beta*(p_t*y_t)/(p_t1*y_t1); zero on the discrete Euler equation
double euler_residual(double q, double y_t, double y_t1, double p_t, double p_t1,
                      const model_params& p);

// LHS - RHS of (p_t/p_prev)[p_t/p_prev - 1]
//   = beta (p_next/p_t)[p_next/p_t - 1] + ((eps-1)/gamma)[y_t/y_n - 1]
double phillips_residual(double p_prev, double p_t, double p_next, double y_t,
                         const model_params& p);

struct discrete_path {
  std::vector<double> i;       // policy rate i(k), k = 0..K
  std::vector<double> pi_next; // inflation pi(k+1), k = 0..K
};

struct forward_solution {
  double y_hat0;      // output gap at 0 from the forward-solved Euler equation
  double tail_bound;  // alpha^{K+1} geometric truncation bound
};

forward_solution forward_solve_output(const discrete_path& path, const model_params& p,
                                      double r_n);

// one-step transition of the log-linearized discrete model with period length
// dt (beta = e^{-delta dt}), acting on (y gap, inflation rate); converges to
// the matrix exponential of the continuous linearization as dt -> 0
std::array<std::array<double, 2>, 2> one_step_map(const model_params& p, double dt);

} // namespace wunklab::discrete

#endif
