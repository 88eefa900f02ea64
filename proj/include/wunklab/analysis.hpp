#ifndef WUNKLAB_ANALYSIS_HPP
#define WUNKLAB_ANALYSIS_HPP

#include "wunklab/dynamics.hpp"

#include <array>
#include <complex>
#include <optional>
#include <vector>

namespace wunklab::analysis {

using dynamics::linear_system;
using dynamics::regime;
using dynamics::state;
using dynamics::velocity;
using model::model_params;

enum class node_kind {
  saddle,
  nodal_source,
  spiral_source,
  nodal_sink,
  spiral_sink,
  center,
};

struct classification {
  node_kind kind;
  double trace;
  double det;
  double discriminant; // trace^2 - 4 det
  std::array<std::complex<double>, 2> eigenvalues;
  bool real_eigenvalues;
  // unit eigenvectors (first nonzero component positive); valid only when
  // eigenvalues are real
  std::array<std::array<double, 2>, 2> eigenvectors;
};

struct line {
  state point;
  std::array<double, 2> direction; // unit norm
  double eigenvalue;
  bool stable; // eigenvalue < 0
};

struct invariant_lines_result {
  std::vector<line> stable;
  std::vector<line> unstable;
};

// pi = slope * x + intercept, or a vertical line x = x_value when degenerate
struct nullcline {
  bool vertical = false;
  double slope = 0.0;
  double intercept = 0.0;
  double x_value = 0.0; // vertical case only
};

struct nullcline_pair {
  nullcline euler;
  nullcline phillips;
};

state steady_state(const model_params& p, regime r, double g);
classification classify(const linear_system& L);
invariant_lines_result invariant_lines(const linear_system& L);
nullcline_pair nullclines(const model_params& p, regime r, double g);

struct field_sample {
  state s;
  velocity v;
};

// row-major samples (x outer, pi inner) of the model field: baseline for
// eta = 0, linearized-gov for eta > 0
std::vector<field_sample> phase_field(const model_params& p, regime r, double g,
                                      double x_lo, double x_hi, int nx,
                                      double pi_lo, double pi_hi, int npi);

const char* node_kind_name(node_kind k);

} // namespace wunklab::analysis

#endif
