#ifndef OAMCMAB_OAMCMAB_H
#define OAMCMAB_OAMCMAB_H

/*
 * C interface to the two-player competitive bandit simulator. Arms are
 * encoded in the orbital angular momentum of two photons whose interference
 * at a beam splitter forbids both players from selecting the same arm.
 *
 * Every function returns an oam_status. On failure, oam_last_error() returns
 * a message for the calling thread that stays valid until the next call into
 * the library from that thread. Objects are opaque and released with the
 * matching *_free function; passing NULL to a *_free function is a no-op.
 *
 * Arm indices are 1-based across this interface.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(OAMCMAB_BUILDING)
#    define OAMCMAB_API __declspec(dllexport)
#  else
#    define OAMCMAB_API __declspec(dllimport)
#  endif
#else
#  define OAMCMAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum oam_status {
  OAM_OK = 0,
  OAM_ERR_INVALID_ARGUMENT = 1, /* NULL pointer, short buffer, bad index */
  OAM_ERR_CONFIG = 2,           /* malformed or unknown configuration field */
  OAM_ERR_DOMAIN = 3,           /* precondition violated */
  OAM_ERR_NUMERIC = 4,          /* non-finite value */
  OAM_ERR_DEGENERATE = 5,       /* separation probability at the shutdown floor */
  OAM_ERR_IO = 6,
  OAM_ERR_VERIFY_FAILED = 7,
  OAM_ERR_INTERNAL = 8
} oam_status;

typedef enum oam_method { OAM_METHOD_PROPOSED = 0, OAM_METHOD_BASELINE = 1 } oam_method;

OAMCMAB_API const char* oam_version(void);
OAMCMAB_API const char* oam_last_error(void);
OAMCMAB_API const char* oam_status_name(oam_status status);

/* ---- configuration ---------------------------------------------------- */

typedef struct oam_config oam_config;

OAMCMAB_API oam_status oam_config_default(oam_config** out);
OAMCMAB_API oam_status oam_config_load(const char* path, oam_config** out);
OAMCMAB_API oam_status oam_config_parse(const char* json_text, oam_config** out);
OAMCMAB_API void oam_config_free(oam_config* config);

OAMCMAB_API oam_status oam_config_set_env_named(oam_config* config, const char* name);
OAMCMAB_API oam_status oam_config_set_env_probs(oam_config* config, const double* probs,
                                                size_t n_arms);
OAMCMAB_API oam_status oam_config_set_seed(oam_config* config, uint64_t seed);
OAMCMAB_API oam_status oam_config_set_method(oam_config* config, const char* method);
OAMCMAB_API oam_status oam_config_set_lambda(oam_config* config, double lambda);
OAMCMAB_API oam_status oam_config_set_lambda_grid(oam_config* config, const double* grid,
                                                  size_t count);
OAMCMAB_API oam_status oam_config_set_trials(oam_config* config, uint64_t trials);
OAMCMAB_API oam_status oam_config_set_horizon(oam_config* config, uint64_t horizon);
OAMCMAB_API oam_status oam_config_set_out_dir(oam_config* config, const char* dir);
OAMCMAB_API oam_status oam_config_set_warm_start(oam_config* config, int enabled);

/* Borrowed pointer, valid while `config` lives and is not modified. */
OAMCMAB_API const char* oam_config_out_dir(const oam_config* config);
OAMCMAB_API size_t oam_config_n_arms(const oam_config* config);

/* ---- experiments ------------------------------------------------------ */

typedef struct oam_run oam_run;

/* Runs E trials of T steps. `threads` = 0 uses the hardware concurrency.
 * Results do not depend on the thread count. */
OAMCMAB_API oam_status oam_run_execute(const oam_config* config, unsigned threads, oam_run** out);
OAMCMAB_API void oam_run_free(oam_run* run);

/* Writes summary.json, curves.csv and trials.csv into `out_dir`. */
OAMCMAB_API oam_status oam_run_write(const oam_run* run, const char* out_dir);

OAMCMAB_API double oam_run_final_regret(const oam_run* run);
OAMCMAB_API double oam_run_final_regret_stderr(const oam_run* run);
OAMCMAB_API uint64_t oam_run_conflicts(const oam_run* run);
OAMCMAB_API double oam_run_mean_attempts(const oam_run* run);
OAMCMAB_API uint64_t oam_run_horizon(const oam_run* run);
/* Regret(t) for t = 0..T. */
OAMCMAB_API double oam_run_regret_at(const oam_run* run, uint64_t t);
/* Per-step separation statistics over trials, t = 1..T. */
OAMCMAB_API oam_status oam_run_psep_at(const oam_run* run, uint64_t t, double* mean, double* min,
                                       double* max);
OAMCMAB_API size_t oam_run_recorded_steps(const oam_run* run);
/* k-th recorded step (0-based k) and the RMSE of 1-based `arm` there. */
OAMCMAB_API oam_status oam_run_rmse(const oam_run* run, size_t k, size_t arm, uint64_t* t,
                                    double* rmse);

typedef struct oam_sweep oam_sweep;

/* One experiment per (method, lambda) using the config's lambda grid (or the
 * default 0.01..0.15 grid) and its method list. */
OAMCMAB_API oam_status oam_sweep_execute(const oam_config* config, unsigned threads,
                                         oam_sweep** out);
OAMCMAB_API void oam_sweep_free(oam_sweep* sweep);
OAMCMAB_API size_t oam_sweep_rows(const oam_sweep* sweep);
OAMCMAB_API oam_status oam_sweep_row(const oam_sweep* sweep, size_t i, double* lambda,
                                     oam_method* method, double* final_regret, double* std_error);
/* Writes sweep.csv into `out_dir`. */
OAMCMAB_API oam_status oam_sweep_write(const oam_sweep* sweep, const char* out_dir);

/* ---- property verification -------------------------------------------- */

typedef void (*oam_verify_callback)(const char* property, int passed, double worst,
                                    double tolerance, void* user);

/* Runs the randomized invariant suite on `instances` random state pairs.
 * Returns OAM_ERR_VERIFY_FAILED if any property fails. */
OAMCMAB_API oam_status oam_verify(uint64_t seed, uint32_t instances, oam_verify_callback callback,
                                  void* user);

/* ---- numerical primitives --------------------------------------------- */

OAMCMAB_API oam_status oam_named_env(const char* name, double* probs_out, size_t capacity,
                                     size_t* n_arms);

OAMCMAB_API oam_status oam_desired_probabilities(const double* mu_hat, size_t n_arms, double beta,
                                                 double* p_out);

/* Pr(n1, -n2) into `joint_out` (n_arms * n_arms, row-major, row = player 1). */
OAMCMAB_API oam_status oam_joint_distribution(const double* p1, const double* theta1,
                                              const double* p2, const double* theta2,
                                              size_t n_arms, double* joint_out, double* p_sep);

OAMCMAB_API oam_status oam_fidelity(const double* p1, const double* theta1, const double* p2,
                                    const double* theta2, size_t n_arms, double* fidelity);

/* Minimizes |sum p_n e^{i w_n}|^2 from w_n = 2 (n-1) pi / N with default
 * tolerances. */
OAMCMAB_API oam_status oam_optimize_phases(const double* p_hat, size_t n_arms, double* omega_out,
                                           double* objective, int* converged);

/* theta = (-1)^player omega / 2 */
OAMCMAB_API oam_status oam_assign_phases(int player, const double* omega_hat, size_t n_arms,
                                         double* theta_out);

#ifdef __cplusplus
}
#endif

#endif /* OAMCMAB_OAMCMAB_H */
