/* C interface of the spatial network calculus toolkit.
 *
 * Every function returns an snc_status; on failure snc_last_error() gives
 * a message for the calling thread. Handles are opaque, owned by the caller
 * and released with the matching *_destroy function (NULL is accepted). */
#ifndef SNC_SNC_H
#define SNC_SNC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SNC_API __declspec(dllexport)
#else
#define SNC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum snc_status {
  SNC_OK = 0,
  SNC_ERR_PARAMETER = 1,
  SNC_ERR_DOMAIN = 2,
  SNC_ERR_DIVERGENCE = 3,
  SNC_ERR_CONSISTENCY = 4,
  SNC_ERR_CONFIG = 5,
  SNC_ERR_IO = 6,
  SNC_ERR_INTERNAL = 7
} snc_status;

typedef enum snc_power_rule { SNC_POWER_CONSTANT = 0, SNC_POWER_BETA_CONTROL = 1, SNC_POWER_LINEAR = 2 } snc_power_rule;
typedef enum snc_generator { SNC_GENERATOR_MATERN = 0, SNC_GENERATOR_LATTICE = 1 } snc_generator;
typedef enum snc_aell_method { SNC_AELL_CLOSED_FORM = 0, SNC_AELL_QUADRATURE = 1 } snc_aell_method;
typedef enum snc_tilde_regulation { SNC_TILDE_UNIT_MARK = 0, SNC_TILDE_POWER_SCALED = 1 } snc_tilde_regulation;

typedef struct snc_scenario snc_scenario;
typedef struct snc_pattern snc_pattern;
typedef struct snc_bound_report snc_bound_report;
typedef struct snc_trial_set snc_trial_set;

typedef struct snc_regulation {
  double sigma;
  double rho;
  double nu;
} snc_regulation;

typedef struct snc_class_bound {
  int class_id;
  double power;
  double ps_lower;
  double ps_lower_simplified;
  double sinr_lower_nofading;
  double interference_upper_nofading;
} snc_class_bound;

typedef struct snc_link_point {
  int class_id;
  double x, y;
  double power;
  double rx_x, rx_y;
} snc_link_point;

typedef struct snc_trial_record {
  uint64_t trial_id;
  uint64_t link_id;
  int class_id;
  double ps_conditional;
  double sinr_nofading;
  double interference_nofading;
  double bound_ps;
  double bound_sinr;
  int compliant;
} snc_trial_record;

typedef void (*snc_message_fn)(const char* message, void* user);

SNC_API const char* snc_version(void);
SNC_API const char* snc_last_error(void);
SNC_API const char* snc_status_name(snc_status status);
/* Process exit code for a status: 0 ok, 2 config, 3 domain/divergence, 4 I/O, 1 other. */
SNC_API int snc_exit_code(snc_status status);

/* Scalar kernels; ell(r) = min(1, r^-alpha). */
SNC_API snc_status snc_pathloss_eval(double alpha, double r, double* out);
/* \int_0^R ell(r) dr (radial = 0) or \int_0^R r ell(r) dr (radial = 1); R may be INFINITY. */
SNC_API snc_status snc_integral_ell(double alpha, double R, int radial, double* out);
/* 2F1(a, 1; a + 1; z) for 0 < a < 1 and z <= 0. */
SNC_API snc_status snc_gauss_2f1_a1(double a, double z, double* out);
SNC_API snc_status snc_beta_power(double theta, double beta, double* out);
SNC_API snc_status snc_mhcpp_params(double power, double hardcore, snc_regulation* out);
SNC_API snc_status snc_a_ell(const snc_regulation* params, double alpha, double* out);
SNC_API snc_status snc_a_ell_tilde(double theta_i, double power_i, double power_j, double r0, double alpha,
                                   const snc_regulation* params_j, snc_aell_method method, double* out);

/* Scenario: defaults alpha = 4, r0 = 1, W = 0, window radius 100 without
 * guard, Matern generator with parent intensity 0.3, seed 1. */
SNC_API snc_status snc_scenario_create(snc_scenario** out);
SNC_API void snc_scenario_destroy(snc_scenario* scenario);
SNC_API snc_status snc_scenario_add_class(snc_scenario* scenario, double theta, double hardcore,
                                          snc_power_rule rule, double rule_parameter);
SNC_API snc_status snc_scenario_set_link(snc_scenario* scenario, double r0, double noise_w);
SNC_API snc_status snc_scenario_set_alpha(snc_scenario* scenario, double alpha);
SNC_API snc_status snc_scenario_set_window(snc_scenario* scenario, double radius, double guard);
SNC_API snc_status snc_scenario_set_generator(snc_scenario* scenario, snc_generator generator,
                                              double base_intensity, double rx_orientation_rad);
SNC_API snc_status snc_scenario_set_seed(snc_scenario* scenario, uint64_t seed);
SNC_API snc_status snc_scenario_class_count(const snc_scenario* scenario, size_t* out);

SNC_API snc_status snc_bounds_compute(const snc_scenario* scenario, snc_tilde_regulation tilde,
                                      snc_bound_report** out);
SNC_API void snc_bound_report_destroy(snc_bound_report* report);
SNC_API size_t snc_bound_report_class_count(const snc_bound_report* report);
SNC_API snc_status snc_bound_report_class(const snc_bound_report* report, size_t index, snc_class_bound* out);
SNC_API snc_status snc_bound_report_ps_min(const snc_bound_report* report, double* out);
SNC_API snc_status snc_bound_report_envelope(const snc_bound_report* report, double* c0, double* c1, double* c2);

SNC_API snc_status snc_pattern_generate(const snc_scenario* scenario, uint64_t trial_id, snc_pattern** out);
SNC_API void snc_pattern_destroy(snc_pattern* pattern);
SNC_API size_t snc_pattern_size(const snc_pattern* pattern);
SNC_API snc_status snc_pattern_point(const snc_pattern* pattern, size_t index, snc_link_point* out);
SNC_API snc_status snc_pattern_write_csv(const snc_pattern* pattern, const char* path);
/* Ball check of the whole pattern against params at n_centers random centers of the evaluation disc. */
SNC_API snc_status snc_pattern_check_ball(const snc_pattern* pattern, const snc_regulation* params,
                                          size_t n_centers, uint64_t seed, int* compliant, double* worst_margin);

SNC_API snc_status snc_trials_run(const snc_scenario* scenario, size_t n_trials, unsigned threads,
                                  snc_trial_set** out);
SNC_API void snc_trial_set_destroy(snc_trial_set* set);
SNC_API size_t snc_trial_set_count(const snc_trial_set* set);
SNC_API snc_status snc_trial_set_get(const snc_trial_set* set, size_t index, snc_trial_record* out);
SNC_API snc_status snc_trial_set_write_csv(const snc_trial_set* set, const char* path);

/* Runs "bounds", "simulate" or "check" on a config file. A seed overrides
 * the config when has_seed is nonzero. Notes go to `on_message` (may be
 * NULL); *all_compliant (may be NULL) reports the compliance verdict. */
SNC_API snc_status snc_run_experiment(const char* command, const char* config_path, const char* out_dir,
                                      uint64_t seed, int has_seed, unsigned threads, snc_message_fn on_message,
                                      void* user, int* all_compliant);

#ifdef __cplusplus
}
#endif

#endif
