#include <doctest.h>

#include "helpers.hpp"
#include "wunklab/errors.hpp"
#include "wunklab/scenarios.hpp"
#include "wunklab/statics.hpp"

#include <cmath>
#include <random>

using namespace wunklab;
using namespace wunklab::statics;

namespace {

model::model_params draw_permanent_zlb(std::mt19937& rng) {
  for (;;) {
    auto p = testing::p0();
    p.delta = testing::uniform(rng, 0.05, 0.2);
    p.epsilon = testing::uniform(rng, 2.0, 10.0);
    p.kappa = testing::uniform(rng, 0.5, 2.0);
    p.a = testing::uniform(rng, 0.5, 2.0);
    p.gamma = (p.epsilon - 1.0) / (p.delta * p.delta) * testing::uniform(rng, 1.2, 4.0);
    const double sbar = p.epsilon * p.kappa / (p.delta * p.gamma * p.a);
    p.mu_w = sbar * testing::uniform(rng, 1.1, 3.0);
    const auto d = model::derive(p);
    const double lo = std::max(0.0, p.delta - p.mu_w * d.y_n);
    const double hi = p.delta - sbar * d.y_n;
    if (!(hi > lo + 1e-4)) continue;
    p.sigma = testing::uniform(rng, lo + 1e-5, hi - 1e-5);
    return p;
  }
}

// eta = 1 wealth economy with an interior permanently-depressed steady state
model::model_params p_eta1() {
  auto p = testing::p0();
  p.eta = 1.0;
  p.gamma = 1000.0;
  p.mu_w = 0.15;
  return p;
}

} // namespace

TEST_CASE("paradox signs at the reference wealth economy") {
  auto p = testing::p0(); // r_n = -0.017 < 0, condition holds
  SUBCASE("thrift: stronger saving taste depresses output and inflation") {
    auto r = comparative_static(p, shock_id::mu_w, 1e-6);
    CHECK(r.paradox == verdict::pass);
    CHECK(r.paradox_name == "thrift");
    CHECK(r.d_x == doctest::Approx(-10.19).epsilon(1e-2));
    CHECK(r.d_pi == doctest::Approx(-1.13).epsilon(1e-2));
    CHECK(r.d_x < 0.0);
    CHECK(r.d_pi < 0.0);
  }
  SUBCASE("toil: lower desired markup (higher kappa) raises output") {
    auto r = comparative_static(p, shock_id::kappa, 1e-6);
    CHECK(r.paradox == verdict::pass);
    CHECK(r.paradox_name == "toil");
    CHECK(r.d_x == doctest::Approx(1.13).epsilon(1e-2));
    CHECK(r.d_x > 0.0);
  }
  SUBCASE("flexibility: more rigidity (higher gamma) raises output") {
    auto r = comparative_static(p, shock_id::gamma, 1e-6);
    CHECK(r.paradox == verdict::pass);
    CHECK(r.paradox_name == "flexibility");
    CHECK(r.d_x == doctest::Approx(0.0025).epsilon(1e-2));
    CHECK(r.d_x > 0.0);
  }
  SUBCASE("technology: better technology lowers output") {
    auto r = comparative_static(p, shock_id::technology, 1e-6);
    CHECK(r.paradox == verdict::pass);
    CHECK(r.paradox_name == "toil");
    CHECK(r.d_x == doctest::Approx(-1.13).epsilon(1e-2));
  }
}

TEST_CASE("spending statics equal the multiplier limit") {
  auto p = p_eta1();
  auto r = comparative_static(p, shock_id::spending, 1e-6);
  CHECK(r.paradox == verdict::pass);
  CHECK(r.paradox_name == "spending");
  CHECK(r.d_x > 0.0);
  CHECK(r.d_y_d_g > 1.0);
  CHECK(r.d_y_d_g == doctest::Approx(scenarios::multiplier_limit(p)).epsilon(1e-9));
  // the closed-form steady state is linear in g, so the difference quotient
  // is exact
  CHECK(r.fd_x == doctest::Approx(r.d_x).epsilon(1e-9));
  CHECK(r.fd_pi == doctest::Approx(r.d_pi).epsilon(1e-9));
}

TEST_CASE("analytic derivatives match finite differences") {
  std::mt19937 rng(71);
  for (int i = 0; i < 50; ++i) {
    auto p = draw_permanent_zlb(rng);
    for (auto s : {shock_id::mu_w, shock_id::kappa, shock_id::gamma, shock_id::technology}) {
      auto r = comparative_static(p, s, 1e-6);
      CHECK(std::fabs(r.fd_x - r.d_x) <= 1e-6 * std::max(1.0, std::fabs(r.d_x)));
      CHECK(std::fabs(r.fd_pi - r.d_pi) <= 1e-6 * std::max(1.0, std::fabs(r.d_pi)));
      CHECK(r.paradox == verdict::pass);
    }
    // base/shifted states are genuine steady states
    auto r = comparative_static(p, shock_id::mu_w, 1e-6);
    auto v = dynamics::field_baseline(r.base, p, dynamics::regime::zlb, 0.0);
    CHECK(std::fabs(v.dx) < 1e-12);
    CHECK(std::fabs(v.dpi) < 1e-12);
  }
}

TEST_CASE("statics preconditions") {
  SUBCASE("requires the wealth condition") {
    CHECK_THROWS_AS(comparative_static(testing::p0_nk(), shock_id::mu_w, 1e-6), error);
  }
  SUBCASE("requires a permanently negative natural rate") {
    auto p = testing::p0();
    p.mu_w = 0.125; // condition holds but r_n = +0.0038
    try {
      comparative_static(p, shock_id::mu_w, 1e-6);
      CHECK(false);
    } catch (const error& e) {
      CHECK(e.code() == errc::invalid_param);
    }
  }
  SUBCASE("spending shock requires eta > 0") {
    CHECK_THROWS_AS(comparative_static(testing::p0(), shock_id::spending, 1e-6), error);
  }
  SUBCASE("h_rel must be positive") {
    CHECK_THROWS_AS(comparative_static(testing::p0(), shock_id::mu_w, 0.0), error);
  }
}

TEST_CASE("shock and verdict names") {
  CHECK(shock_from_name("mu_w") == shock_id::mu_w);
  CHECK(shock_from_name("kappa") == shock_id::kappa);
  CHECK(shock_from_name("gamma") == shock_id::gamma);
  CHECK(shock_from_name("a") == shock_id::technology);
  CHECK(shock_from_name("technology") == shock_id::technology);
  CHECK(shock_from_name("g") == shock_id::spending);
  CHECK(shock_from_name("spending") == shock_id::spending);
  CHECK_THROWS_AS(shock_from_name("xi"), error);
  for (auto s : {shock_id::mu_w, shock_id::kappa, shock_id::gamma, shock_id::technology,
                 shock_id::spending})
    CHECK(shock_from_name(shock_name(s)) == s);
  CHECK(std::string(verdict_name(verdict::pass)) == "pass");
  CHECK(std::string(verdict_name(verdict::fail)) == "fail");
  CHECK(std::string(verdict_name(verdict::inconclusive)) == "inconclusive");
}
