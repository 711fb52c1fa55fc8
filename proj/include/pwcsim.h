/*
 * pwcsim - partial wavelength converter interferometer simulator.
 *
 * C interface of the shared library.  A run is configured through an opaque
 * handle, executed once, and queried for summary metrics and the paths of
 * the files it wrote.  All functions returning pwcsim_status leave a
 * human-readable message on the handle (pwcsim_run_last_error) on failure.
 */
#ifndef PWCSIM_H
#define PWCSIM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pwcsim_status {
    PWCSIM_OK = 0,
    PWCSIM_ERROR_INTERNAL = 1,
    PWCSIM_ERROR_CONFIG = 2, /* config parse error or unknown scenario */
    PWCSIM_ERROR_DOMAIN = 3, /* physical argument out of range */
    PWCSIM_ERROR_FIT = 4,    /* fit non-convergence or degenerate data */
    PWCSIM_ERROR_IO = 5,     /* file system failure */
} pwcsim_status;

typedef struct pwcsim_run pwcsim_run; /* opaque */

const char* pwcsim_version(void);
const char* pwcsim_status_name(pwcsim_status status);

/* Number of known scenarios and the name of the i-th one (NULL past end). */
size_t pwcsim_scenario_count(void);
const char* pwcsim_scenario_name(size_t index);

pwcsim_run* pwcsim_run_new(void);
void pwcsim_run_free(pwcsim_run* run);

pwcsim_status pwcsim_run_set_scenario(pwcsim_run* run, const char* name);
pwcsim_status pwcsim_run_set_config_file(pwcsim_run* run, const char* path);
pwcsim_status pwcsim_run_set_output_dir(pwcsim_run* run, const char* path);
void pwcsim_run_set_seed(pwcsim_run* run, uint64_t seed);
pwcsim_status pwcsim_run_set_points(pwcsim_run* run, int points);
pwcsim_status pwcsim_run_set_duration_s(pwcsim_run* run, double seconds);
pwcsim_status pwcsim_run_set_degree(pwcsim_run* run, int degree);
void pwcsim_run_set_plot(pwcsim_run* run, int enabled);

/* Executes the configured scenario.  Valid once per handle. */
pwcsim_status pwcsim_run_execute(pwcsim_run* run);

/* Message of the last failed call on this handle ("" if none). */
const char* pwcsim_run_last_error(const pwcsim_run* run);

/* Summary metrics of an executed run. */
size_t pwcsim_run_metric_count(const pwcsim_run* run);
const char* pwcsim_run_metric_name(const pwcsim_run* run, size_t index);
double pwcsim_run_metric_value(const pwcsim_run* run, size_t index);
/* Looks a metric up by name; returns PWCSIM_ERROR_DOMAIN when absent. */
pwcsim_status pwcsim_run_metric(const pwcsim_run* run, const char* name,
                                double* value);

/* Files written by an executed run (names inside the output directory). */
size_t pwcsim_run_artifact_count(const pwcsim_run* run);
const char* pwcsim_run_artifact_name(const pwcsim_run* run, size_t index);

/* Validates a tabular results file; on failure writes the reason (with a
 * line number) into message, which is truncated to message_size. */
pwcsim_status pwcsim_validate_table(const char* path, char* message,
                                    size_t message_size);

/* Direct model evaluation, no handle needed. */
pwcsim_status pwcsim_conversion_efficiency(double saturation_a,
                                           double eta_per_mw, double pump_mw,
                                           double* transmitted,
                                           double* reflected);
pwcsim_status pwcsim_predict_visibility(double alpha2, double t_all,
                                        double f_clock_hz, double noise_cps,
                                        double* visibility);

/* Weighted fit of T(P) = 1 - A sin^2(sqrt(eta P)).  weights may be NULL for
 * the default inverse-variance weighting. */
pwcsim_status pwcsim_fit_conversion_curve(const double* pump_mw,
                                          const double* t_obs,
                                          const double* weights, size_t n,
                                          double* a, double* a_sigma,
                                          double* eta, double* eta_sigma);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PWCSIM_H */
