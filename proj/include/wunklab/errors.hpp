#ifndef WUNKLAB_ERRORS_HPP
#define WUNKLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wunklab {

enum class errc {
  ok = 0,
  invalid_param,
  json,
  domain,
  not_steady_state,
  boundary,
  repeated_eigenvalue,
  complex_eigenvalue,
  positivity,
  bracket,
  infinite_limit,
  nonpositive_output,
  bad_argument,
  internal,
};

class error : public std::runtime_error {
public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

// raised when a trajectory hits x <= x_min during integration; carries the
// forward time at which positivity failed
class positivity_breach : public error {
public:
  positivity_breach(double t, const std::string& what)
      : error(errc::positivity, what), t_breach_(t) {}
  double t_breach() const noexcept { return t_breach_; }

private:
  double t_breach_;
};

} // namespace wunklab

#endif
