#ifndef WUNKLAB_DYNAMICS_HPP
#define WUNKLAB_DYNAMICS_HPP

#include "wunklab/params.hpp"

namespace wunklab::dynamics {

using model::model_params;

// NormalRule: i = r_n + phi*pi.  zlb and peg both set i = 0; peg tags the
// forward-guidance phase (rate held at zero although the natural rate is
// positive), the fields are identical.
enum class regime { normal_rule, zlb, peg };

struct state {
  double x;  // output y (eta = 0) or private consumption c (eta > 0)
  double pi; // inflation, per quarter
};

struct velocity {
  double dx;
  double dpi;
};

struct linear_system {
  double m11, m12, m21, m22;
  double x_star, pi_star; // expansion point
};

// nonlinear consumption-savings / pricing system; g must be 0 when eta = 0
velocity field_baseline(const state& s, const model_params& p, regime r, double g);

// system linearized around (c_n, pi = 0, g = 0); valid for any eta >= 0 and
// the basis for all government-spending experiments
velocity field_linearized_gov(const state& s, const model_params& p, regime r, double g);

// closed-form linearization at a steady state `at` of the relevant field
// (baseline for eta = 0, linearized-gov for eta > 0); `at` is checked to
// 1e-9 in velocity norm
linear_system jacobian(const model_params& p, regime r, const state& at, double g);

const char* regime_name(regime r);
regime regime_from_name(const std::string& name);

} // namespace wunklab::dynamics

#endif
