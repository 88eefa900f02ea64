#ifndef WUNKLAB_TEST_HELPERS_HPP
#define WUNKLAB_TEST_HELPERS_HPP

#include "wunklab/params.hpp"

#include <array>
#include <cmath>
#include <random>

namespace testing {

// reference parameter set used throughout the suite
inline wunklab::model::model_params p0() {
  wunklab::model::model_params p;
  p.delta = 0.108;
  p.sigma = 0.0;
  p.epsilon = 6.0;
  p.kappa = 1.0;
  p.gamma = 500.0;
  p.a = 1.0;
  p.mu_w = 0.15;
  p.eta = 0.0;
  p.phi = 1.5;
  p.beta = 0.99;
  return p;
}

inline wunklab::model::model_params p0_nk() {
  auto p = p0();
  p.mu_w = 0.0;
  return p;
}

using mat2 = std::array<std::array<double, 2>, 2>;

inline mat2 mat_mul(const mat2& A, const mat2& B) {
  mat2 C{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      C[i][j] = A[i][0] * B[0][j] + A[i][1] * B[1][j];
  return C;
}

// 2x2 matrix exponential by scaling and squaring on the Taylor series
inline mat2 expm2(mat2 M) {
  int squarings = 0;
  double norm = 0.0;
  for (auto& row : M)
    for (double v : row) norm = std::max(norm, std::fabs(v));
  while (norm > 0.5) {
    norm /= 2.0;
    ++squarings;
  }
  const double scale = std::ldexp(1.0, -squarings);
  for (auto& row : M)
    for (double& v : row) v *= scale;

  mat2 E{{{1.0, 0.0}, {0.0, 1.0}}};
  mat2 term{{{1.0, 0.0}, {0.0, 1.0}}};
  for (int k = 1; k <= 24; ++k) {
    term = mat_mul(term, M);
    for (auto& row : term)
      for (double& v : row) v /= static_cast<double>(k);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) E[i][j] += term[i][j];
  }
  for (int s = 0; s < squarings; ++s) E = mat_mul(E, E);
  return E;
}

inline double uniform(std::mt19937& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

} // namespace testing

#endif
