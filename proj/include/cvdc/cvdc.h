/* C interface to the cvdc dense-coding library.
 *
 * Every handle is opaque and owned by the caller; release it with the matching
 * *_free function (passing NULL is allowed). Functions return CVDC_OK or an
 * error status; on error cvdc_last_error() describes the failure for the
 * calling thread. Output pointers are written only on success.
 */
#ifndef CVDC_H
#define CVDC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  ifdef CVDC_BUILDING
#    define CVDC_API __declspec(dllexport)
#  else
#    define CVDC_API __declspec(dllimport)
#  endif
#else
#  define CVDC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cvdc_status {
  CVDC_OK = 0,
  CVDC_ERR_DOMAIN = 1,
  CVDC_ERR_CONTRACT = 2,
  CVDC_ERR_UNPHYSICAL = 3,
  CVDC_ERR_INFEASIBLE = 4,
  CVDC_ERR_BRACKET = 5,
  CVDC_ERR_THRESHOLD_NOT_FOUND = 6,
  CVDC_ERR_NON_FINITE = 7,
  CVDC_ERR_PARSE = 8,
  CVDC_ERR_NULL_ARGUMENT = 9,
  CVDC_ERR_INTERNAL = 10
} cvdc_status;

typedef enum cvdc_scheme { CVDC_ADAPTIVE = 0, CVDC_NON_ADAPTIVE = 1 } cvdc_scheme;

typedef enum cvdc_state_family {
  CVDC_STATE_TMSV = 0,
  CVDC_STATE_KAPPA = 1,
  CVDC_STATE_PURE = 2,
  CVDC_STATE_DECOMP = 3,
  CVDC_STATE_RANDOM = 4
} cvdc_state_family;

typedef struct cvdc_state cvdc_state;
typedef struct cvdc_channel cvdc_channel;
typedef struct cvdc_scenario cvdc_scenario;
typedef struct cvdc_samples cvdc_samples;

typedef struct cvdc_capacity_result {
  double capacity_bits; /* NaN when infeasible */
  double r_opt;
  double sigma_opt;
  int feasible;
  int transcription_warning;
} cvdc_capacity_result;

typedef struct cvdc_standard_form {
  double a, b1, b2, c;
} cvdc_standard_form;

typedef struct cvdc_delta_sc_result {
  double delta_sc;
  double neg_cond_entropy;
  double neg_cond_entropy_th;
  double nbar_threshold;
} cvdc_delta_sc_result;

typedef struct cvdc_decomp_optimum {
  double r;
  double s2;
  double mi_bits;
  double residual_r;
  double residual_s2;
  int sweeps;
  int converged;
} cvdc_decomp_result;

typedef struct cvdc_pure_sample {
  uint64_t seed;
  double nbar_sender;
  double entanglement_bits;
  double holevo_bits;
} cvdc_pure_sample;

typedef struct cvdc_scatter_summary {
  double rank_correlation;
  double slope;
  double intercept;
  size_t monotonicity_violations;
} cvdc_scatter_summary;

typedef double (*cvdc_scalar_fn)(double x, void* user);

/* library */
CVDC_API const char* cvdc_version(void);
CVDC_API const char* cvdc_last_error(void);
/* 1-based column of the last parse error, 0 if the last error was not a parse error. */
CVDC_API size_t cvdc_last_error_column(void);
CVDC_API const char* cvdc_status_name(cvdc_status status);
/* Environmental-noise convention used when a spec does not name one: "nbarhalf" or "nbar1". */
CVDC_API const char* cvdc_default_env_convention(void);

/* Copy a spec string into buf (NUL-terminated, truncated to cap). *needed gets the
 * full length without the terminator. buf may be NULL when cap is 0. */
CVDC_API cvdc_status cvdc_channel_spec_string(const cvdc_channel* ch, char* buf, size_t cap,
                                              size_t* needed);
CVDC_API cvdc_status cvdc_state_spec_string(const cvdc_state* st, char* buf, size_t cap,
                                            size_t* needed);

/* channels */
CVDC_API cvdc_status cvdc_channel_parse(const char* text, cvdc_channel** out);
CVDC_API cvdc_status cvdc_channel_make(double x, double y, cvdc_channel** out);
CVDC_API cvdc_status cvdc_channel_clone(const cvdc_channel* ch, cvdc_channel** out);
/* Fails with CVDC_ERR_PARSE if the channel kind has no such parameter. */
CVDC_API cvdc_status cvdc_channel_set_param(cvdc_channel* ch, const char* name, double value);
CVDC_API int cvdc_channel_accepts(const cvdc_channel* ch, const char* name);
CVDC_API cvdc_status cvdc_channel_coeffs(const cvdc_channel* ch, double* x, double* y);
CVDC_API void cvdc_channel_free(cvdc_channel* ch);

/* scenarios; a NULL channel means identity */
CVDC_API cvdc_status cvdc_scenario_create(const cvdc_channel* dist_a, const cvdc_channel* dist_b,
                                          const cvdc_channel* post, double tau,
                                          cvdc_scenario** out);
/* out[7] = x1, y1, x2, y2, x3, y3, tau */
CVDC_API cvdc_status cvdc_scenario_coeffs(const cvdc_scenario* sc, double out[7]);
CVDC_API void cvdc_scenario_free(cvdc_scenario* sc);

/* states */
CVDC_API cvdc_status cvdc_state_parse(const char* text, cvdc_state** out);
CVDC_API cvdc_status cvdc_state_get_family(const cvdc_state* st, cvdc_state_family* out);
/* *present is 0 (and *value untouched) when the parameter was not given. */
CVDC_API cvdc_status cvdc_state_param(const cvdc_state* st, const char* name, double* value,
                                      int* present);
CVDC_API cvdc_status cvdc_state_set_param(cvdc_state* st, const char* name, double value);
/* Row-major 4x4 covariance, ordering (x_A, p_A, x_B, p_B), vacuum = identity. */
CVDC_API cvdc_status cvdc_state_covariance(const cvdc_state* st, double cov[16]);
CVDC_API cvdc_status cvdc_conditional_entropy(const cvdc_state* st, double* out);
CVDC_API cvdc_status cvdc_von_neumann_entropy(const cvdc_state* st, double* out);
/* Capacity of the state's family. Missing family parameters are optimized over;
 * given ones are held fixed. */
CVDC_API cvdc_status cvdc_state_capacity(const cvdc_state* st, const cvdc_scenario* sc,
                                         double nbar, cvdc_scheme scheme,
                                         cvdc_capacity_result* out);
CVDC_API void cvdc_state_free(cvdc_state* st);

/* protocol (two-mode squeezed vacuum family) */
CVDC_API cvdc_status cvdc_capacity(const cvdc_scenario* sc, double nbar, cvdc_scheme scheme,
                                   cvdc_capacity_result* out);
CVDC_API cvdc_status cvdc_classical_capacity(double nbar, double* out);
/* NaN when the capacity is infeasible. */
CVDC_API cvdc_status cvdc_quantum_advantage(const cvdc_scenario* sc, double nbar,
                                            cvdc_scheme scheme, double* out);
CVDC_API cvdc_status cvdc_threshold_energy(const cvdc_scenario* sc, cvdc_scheme scheme,
                                           double lo, double hi, double tol, double* out);
CVDC_API cvdc_status cvdc_negative_conditional_entropy(const cvdc_scenario* sc, double nbar,
                                                       double* out);
CVDC_API cvdc_status cvdc_delta_sc(const cvdc_scenario* sc, double nbar,
                                   cvdc_delta_sc_result* out);
CVDC_API cvdc_status cvdc_mutual_information(const cvdc_standard_form* sf,
                                             const cvdc_scenario* sc, double sigma, double* out);
CVDC_API cvdc_status cvdc_sigma_adaptive(const cvdc_standard_form* sf, const cvdc_scenario* sc,
                                         double nbar, double* out);

/* families */
CVDC_API cvdc_status cvdc_kappa_capacity(double kappa, const cvdc_scenario* sc, double nbar,
                                         cvdc_capacity_result* out);
CVDC_API cvdc_status cvdc_kappa_mutual_information(double r, double kappa,
                                                   const cvdc_scenario* sc, double nbar,
                                                   double* out);
CVDC_API cvdc_status cvdc_pure_class_capacity(double nbar, double* a_opt, double* capacity_bits);
CVDC_API cvdc_status cvdc_decomp_optimum(double nbar, cvdc_decomp_result* out);

/* holevo */
CVDC_API cvdc_status cvdc_holevo_pure(const cvdc_state* st, double sigma, double* out);
CVDC_API cvdc_status cvdc_entanglement_pure(const cvdc_state* st, double* out);
CVDC_API cvdc_status cvdc_holevo_scatter(double nbar, size_t n_samples, uint64_t seed,
                                         double sigma, cvdc_samples** out);
CVDC_API size_t cvdc_samples_count(const cvdc_samples* s);
CVDC_API cvdc_status cvdc_samples_get(const cvdc_samples* s, size_t i, cvdc_pure_sample* out);
CVDC_API cvdc_status cvdc_samples_summary(const cvdc_samples* s, cvdc_scatter_summary* out);
CVDC_API void cvdc_samples_free(cvdc_samples* s);

/* 1-D numerics with a C callback */
CVDC_API cvdc_status cvdc_find_root(cvdc_scalar_fn f, void* user, double lo, double hi,
                                    double tol, double* out);
/* Writes at most cap roots; *count gets the total number found. */
CVDC_API cvdc_status cvdc_sign_change_scan(cvdc_scalar_fn f, void* user, double lo, double hi,
                                           size_t steps, double tol, double* roots, size_t cap,
                                           size_t* count);
CVDC_API cvdc_status cvdc_maximize(cvdc_scalar_fn f, void* user, double lo, double hi,
                                   double tol, double* x, double* value);

#ifdef __cplusplus
}
#endif

#endif /* CVDC_H */
