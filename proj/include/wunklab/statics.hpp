#ifndef WUNKLAB_STATICS_HPP
#define WUNKLAB_STATICS_HPP

#include "wunklab/analysis.hpp"

#include <string>

namespace wunklab::statics {

using dynamics::state;
using model::model_params;

// comparative statics of the permanent-ZLB steady state
enum class shock_id { mu_w, kappa, gamma, technology, spending };

enum class verdict { pass, fail, inconclusive };

struct statics_report {
  shock_id shock;
  state base;            // steady state before the shock
  state shifted;         // steady state at parameter + h
  double h;              // absolute step used for the finite difference
  double d_x;            // analytic d x / d theta
  double d_pi;           // analytic d pi / d theta
  double fd_x;           // central finite difference
  double fd_pi;
  double d_y_d_g;        // spending shock only: 1 + d c / d g
  verdict paradox;       // sign pattern of the associated paradox
  std::string paradox_name;
};

// h_rel scales the finite-difference step relative to the parameter magnitude
statics_report comparative_static(const model_params& p, shock_id shock, double h_rel);

shock_id shock_from_name(const std::string& name);
const char* shock_name(shock_id s);
const char* verdict_name(verdict v);

} // namespace wunklab::statics

#endif
