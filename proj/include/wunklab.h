/* C interface to the wunklab engine.
 *
 * All functions return a wunk_status; on failure wunk_last_error() gives a
 * thread-local message.  Strings returned through char** are heap-allocated
 * and must be released with wunk_string_free(). */

#ifndef WUNKLAB_H
#define WUNKLAB_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wunk_status {
  WUNK_OK = 0,
  WUNK_ERR_INVALID_PARAM = 1,
  WUNK_ERR_JSON = 2,
  WUNK_ERR_DOMAIN = 3,
  WUNK_ERR_NOT_STEADY_STATE = 4,
  WUNK_ERR_BOUNDARY = 5,
  WUNK_ERR_REPEATED_EIGENVALUE = 6,
  WUNK_ERR_COMPLEX_EIGENVALUE = 7,
  WUNK_ERR_POSITIVITY = 8,
  WUNK_ERR_BRACKET = 9,
  WUNK_ERR_INFINITE_LIMIT = 10,
  WUNK_ERR_NONPOSITIVE_OUTPUT = 11,
  WUNK_ERR_BAD_ARGUMENT = 12,
  WUNK_ERR_INTERNAL = 13
} wunk_status;

typedef struct wunk_params wunk_params;
typedef struct wunk_trajectory wunk_trajectory;

/* thread-local message for the most recent failure in this thread */
const char* wunk_last_error(void);
void wunk_string_free(char* s);

/* ---- parameters ---- */
wunk_status wunk_params_parse(const char* json, wunk_params** out);
void wunk_params_free(wunk_params* p);
wunk_status wunk_params_json(const wunk_params* p, char** out);

/* derived quantities: {y_n, c_n, r_n, phillips_slope} */
wunk_status wunk_derive_json(const wunk_params* p, char** out);

/* wealth condition: {holds, lhs, rhs, positive_natural_rate_ok} */
wunk_status wunk_check_json(const wunk_params* p, char** out);

/* statistics form: {holds, lhs, rhs} */
wunk_status wunk_check_statistics_json(double delta, double r_n, double lambda,
                                       char** out);

/* ---- analysis ----
 * regime is one of "normal_rule", "zlb", "peg". */
wunk_status wunk_steady_state(const wunk_params* p, const char* regime, double g,
                              double* x, double* pi);
/* steady state, matrix, trace/det/discriminant, kind, eigen-structure,
 * invariant lines */
wunk_status wunk_classify_json(const wunk_params* p, const char* regime, double g,
                               char** out);
wunk_status wunk_nullclines_json(const wunk_params* p, const char* regime, double g,
                                 char** out);
wunk_status wunk_nullclines_csv(const wunk_params* p, const char* regime, double g,
                                char** out);
wunk_status wunk_phase_field_csv(const wunk_params* p, const char* regime, double g,
                                 double x_lo, double x_hi, int nx,
                                 double pi_lo, double pi_hi, int npi, char** out);

/* ---- scenarios ----
 * scenario_json: {"kind": "zlb_episode" | "forward_guidance" | "gov_spending",
 *                 "T": .., "Delta": .., "g": .., "sigma_zlb": ..,
 *                 "sigma_normal": .., "mu_w_zlb": ..}
 * unknown keys are rejected. */
wunk_status wunk_scenario_run(const wunk_params* p, const char* scenario_json,
                              double step, wunk_trajectory** out);
void wunk_trajectory_free(wunk_trajectory* t);
wunk_status wunk_trajectory_size(const wunk_trajectory* t, size_t* n);
/* regime_tag: 0 normal_rule, 1 zlb, 2 peg */
wunk_status wunk_trajectory_sample(const wunk_trajectory* t, size_t idx, double* time,
                                   double* x, double* pi, int* regime_tag);
wunk_status wunk_trajectory_csv(const wunk_trajectory* t, char** out);

wunk_status wunk_multiplier(const wunk_params* p, double T, double g, double s,
                            double step, double* out);
wunk_status wunk_multiplier_limit(const wunk_params* p, double* out);

/* shock_json: {"sigma_zlb": .., "sigma_normal": .., "mu_w_zlb": ..} */
wunk_status wunk_guidance_threshold_json(const wunk_params* p, const char* shock_json,
                                         double tol, double step, char** out);
wunk_status wunk_spending_threshold_json(const wunk_params* p, double sigma_zlb,
                                         double tol, double step, char** out);
/* delta_max <= 0 selects it automatically */
wunk_status wunk_zlb_threshold_json(const wunk_params* p, const char* shock_json,
                                    double delta_max, int grid, double tol,
                                    double step, char** out);

/* ---- statics ----
 * shock is one of "mu_w", "kappa", "gamma", "a", "g" */
wunk_status wunk_comparative_static_json(const wunk_params* p, const char* shock,
                                         double h_rel, char** out);

/* ---- discrete-time model ---- */
wunk_status wunk_loglin_coeffs(const wunk_params* p, double* alpha,
                               double* phillips_coeff);
wunk_status wunk_euler_residual(const wunk_params* p, double q, double y_t,
                                double y_t1, double p_t, double p_t1, double* out);
wunk_status wunk_phillips_residual(const wunk_params* p, double p_prev, double p_t,
                                   double p_next, double y_t, double* out);
wunk_status wunk_forward_solve(const wunk_params* p, const double* i,
                               const double* pi_next, size_t n, double r_n,
                               double* y_hat0, double* tail_bound);

#ifdef __cplusplus
}
#endif

#endif
