#include "wunklab/params.hpp"
#include "wunklab/errors.hpp"

#include <cmath>
#include <json.hpp>

namespace wunklab::model {

void validate(const model_params& p) {
  auto fail = [](const std::string& what) { throw error(errc::invalid_param, what); };
  if (!(p.epsilon > 1.0)) fail("epsilon must satisfy epsilon > 1");
  if (!(p.gamma > 0.0)) fail("gamma must satisfy gamma > 0");
  if (!(p.delta > 0.0)) fail("delta must satisfy delta > 0");
  if (!(p.a > 0.0)) fail("a must satisfy a > 0");
  if (!(p.kappa > 0.0)) fail("kappa must satisfy kappa > 0");
  if (!(p.sigma >= 0.0)) fail("sigma must satisfy sigma >= 0");
  if (!(p.mu_w >= 0.0)) fail("mu_w must satisfy mu_w >= 0");
  if (!(p.eta >= 0.0)) fail("eta must satisfy eta >= 0");
  if (!(p.phi >= 0.0)) fail("phi must satisfy phi >= 0");
  if (!(p.beta > 0.0 && p.beta < 1.0)) fail("beta must satisfy 0 < beta < 1");
  if (!std::isfinite(p.delta) || !std::isfinite(p.sigma) || !std::isfinite(p.epsilon) ||
      !std::isfinite(p.kappa) || !std::isfinite(p.gamma) || !std::isfinite(p.a) ||
      !std::isfinite(p.mu_w) || !std::isfinite(p.eta) || !std::isfinite(p.phi) ||
      !std::isfinite(p.beta))
    fail("parameters must be finite");
}

derived derive(const model_params& p) {
  validate(p);
  derived d;
  const double markup = (p.epsilon - 1.0) / p.epsilon;
  d.y_n = markup * p.a / p.kappa;
  d.c_n = std::pow(markup, 1.0 / (1.0 + p.eta)) * p.a / p.kappa;
  d.r_n = p.delta - p.sigma - p.mu_w * d.c_n;
  const double base = p.epsilon * p.kappa / (p.delta * p.gamma * p.a);
  d.phillips_slope =
      (1.0 + p.eta) * base * std::pow(markup, p.eta / (1.0 + p.eta));
  return d;
}

wunk_report check_wunk(const model_params& p) {
  const derived d = derive(p);
  wunk_report r;
  r.lhs = p.mu_w;
  r.rhs = d.phillips_slope; // reduces to eps*kappa/(delta*gamma*a) at eta = 0
  r.holds = r.lhs > r.rhs;
  r.positive_natural_rate_ok =
      p.delta > std::sqrt((p.epsilon - 1.0) / p.gamma);
  return r;
}

stat_report check_wunk_statistics(double delta, double r_n, double lambda) {
  if (!(delta > 0.0))
    throw error(errc::invalid_param, "delta must satisfy delta > 0");
  stat_report r;
  r.lhs = delta - r_n;
  r.rhs = lambda / delta;
  r.holds = r.lhs > r.rhs;
  return r;
}

model_params params_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw error(errc::json, std::string("parameter JSON parse failure: ") + e.what());
  }
  if (!j.is_object())
    throw error(errc::json, "parameter document must be a JSON object");

  model_params p{};
  bool have_beta = false;
  struct field { const char* name; double* slot; };
  const field fields[] = {
      {"delta", &p.delta}, {"sigma", &p.sigma},   {"epsilon", &p.epsilon},
      {"kappa", &p.kappa}, {"gamma", &p.gamma},   {"a", &p.a},
      {"mu_w", &p.mu_w},   {"eta", &p.eta},       {"phi", &p.phi},
  };
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const auto& f : fields)
      if (it.key() == f.name) known = true;
    if (it.key() == "beta") known = true;
    if (!known)
      throw error(errc::json, "unknown parameter key: " + it.key());
    if (!it.value().is_number())
      throw error(errc::json, "parameter key must be numeric: " + it.key());
  }
  for (const auto& f : fields) {
    if (!j.contains(f.name))
      throw error(errc::json, std::string("missing parameter key: ") + f.name);
    *f.slot = j.at(f.name).get<double>();
  }
  if (j.contains("beta")) {
    p.beta = j.at("beta").get<double>();
    have_beta = true;
  }
  (void)have_beta;
  validate(p);
  return p;
}

std::string params_to_json(const model_params& p) {
  nlohmann::json j{
      {"delta", p.delta}, {"sigma", p.sigma},   {"epsilon", p.epsilon},
      {"kappa", p.kappa}, {"gamma", p.gamma},   {"a", p.a},
      {"mu_w", p.mu_w},   {"eta", p.eta},       {"phi", p.phi},
      {"beta", p.beta},
  };
  return j.dump();
}

} // namespace wunklab::model
