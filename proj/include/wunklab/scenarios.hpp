#ifndef WUNKLAB_SCENARIOS_HPP
#define WUNKLAB_SCENARIOS_HPP

#include "wunklab/analysis.hpp"
#include "wunklab/dynamics.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace wunklab::scenarios {

using dynamics::regime;
using dynamics::state;
using dynamics::velocity;
using model::model_params;

enum class scenario_kind { zlb_episode, forward_guidance, gov_spending };

// what turns the natural rate negative during the ZLB phase: a spread shock
// (sigma_zlb) or a wealth-taste shock (mu_w_zlb); not both at once
struct zlb_shock {
  double sigma_zlb = 0.0;
  double sigma_normal = 0.0;
  std::optional<double> mu_w_zlb;
};

struct scenario {
  scenario_kind kind;
  double T;           // ZLB duration, quarters
  double Delta = 0.0; // rate-peg duration after T (forward guidance only)
  double g = 0.0;     // government spending (spending scenario only)
  zlb_shock shock;
};

struct sample {
  double t;
  state s;
  regime tag;
};

struct trajectory {
  std::vector<sample> samples; // t strictly increasing
  double step;
};

using field_fn = std::function<velocity(const state&)>;

// classic fixed-step 4th-order integration of the time-reversed field from
// t_end down to t_start; samples re-emitted in forward order, last sample is
// the terminal state bitwise.  Aborts with a positivity breach when x <= 1e-9.
trajectory integrate_backward(const field_fn& f, const state& terminal,
                              double t_start, double t_end, double step,
                              regime tag);

trajectory run_scenario(const model_params& p, const scenario& s, double step);

// centered-difference spending multiplier 1 + [c(0;g+s/2) - c(0;g-s/2)]/s
double multiplier(const model_params& p, double T, double g, double s, double step);

// long-run limit of the spending multiplier; throws an infinite-limit error
// when the wealth condition fails (the denominator is nonpositive)
double multiplier_limit(const model_params& p);

struct threshold_result {
  double value;
  double residual;
  int iterations;
  double step;
};

// guidance duration that puts the economy on the unstable line of the ZLB
// saddle at time T (requires mu_w = 0)
threshold_result guidance_threshold_nk(const model_params& p, const zlb_shock& shock,
                                       double tol, double step);

// spending level at which the unstable line of the ZLB system passes through
// the natural steady state (requires mu_w = 0, eta > 0)
threshold_result spending_threshold_nk(const model_params& p, double sigma_zlb,
                                       double tol, double step);

struct tstar_result {
  double value;           // T*: ZLB duration past which every guidance length slumps
  double delta_max;       // upper end of the guidance-duration grid
  int grid;               // number of grid points
  double grid_resolution; // spacing of the grid
  double t_resolution;    // bisection resolution in T
  double step;
};

// delta_max <= 0 selects it automatically (smallest duration at which the
// peg-attained state is within 1e-6 of the guidance steady state)
tstar_result zlb_threshold_wunk(const model_params& p, const zlb_shock& shock,
                                double delta_max, int grid, double tol, double step);

std::string trajectory_csv(const trajectory& tr);

constexpr double default_step = 1e-3;

} // namespace wunklab::scenarios

#endif
