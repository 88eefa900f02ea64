#ifndef WUNKLAB_PARAMS_HPP
#define WUNKLAB_PARAMS_HPP

#include <string>

namespace wunklab::model {

// structural parameters, all rates per quarter
struct model_params {
  double delta;   // time discount rate
  double sigma;   // financial-intermediation spread
  double epsilon; // elasticity of substitution between goods
  double kappa;   // marginal disutility of labor
  double gamma;   // price-adjustment cost
  double a;       // technology level
  double mu_w;    // marginal utility of wealth at zero relative wealth
  double eta;     // inverse Frisch elasticity (0 = linear disutility)
  double phi;     // monetary-policy inflation response
  double beta = 0.99; // discrete-time discount factor (discrete module only)
};

// throws errc::invalid_param naming the violated constraint
void validate(const model_params& p);

struct derived {
  double y_n;            // natural output: ((eps-1)/eps) * a/kappa
  double c_n;            // natural consumption: ((eps-1)/eps)^{1/(1+eta)} * a/kappa
  double r_n;            // natural rate: delta - sigma - mu_w * c_n
  double phillips_slope; // steady-state Phillips line slope
};

derived derive(const model_params& p);

struct wunk_report {
  bool holds;      // mu_w strictly above the slope threshold
  double lhs;      // mu_w
  double rhs;      // (1+eta) * (eps*kappa/(delta*gamma*a)) * ((eps-1)/eps)^{eta/(1+eta)}
  bool positive_natural_rate_ok; // delta > sqrt((eps-1)/gamma)
};

wunk_report check_wunk(const model_params& p);

struct stat_report {
  bool holds; // delta - r_n > lambda / delta
  double lhs;
  double rhs;
};

// empirical-statistics version of the wealth condition; lambda is the
// Phillips output-gap coefficient
stat_report check_wunk_statistics(double delta, double r_n, double lambda);

// JSON loader; field names must match model_params members exactly, unknown
// keys are an error, beta is optional (defaults to 0.99)
model_params params_from_json(const std::string& text);
std::string params_to_json(const model_params& p);

} // namespace wunklab::model

#endif
