#ifndef LQP_LQP_H
#define LQP_LQP_H

/* C interface to the lqp library. All handles are opaque; every function
 * that can fail returns an lqp_status and leaves a message retrievable with
 * lqp_last_error() on the calling thread. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define LQP_API __declspec(dllexport)
#else
#define LQP_API __attribute__((visibility("default")))
#endif

typedef enum lqp_status {
  LQP_OK = 0,
  LQP_INVALID_ARGUMENT = 1,
  LQP_DEGREE_MISMATCH = 2,
  LQP_DOMAIN_ERROR = 3,
  LQP_SINGULAR_JACOBIAN = 4,
  LQP_NON_CONVERGENCE = 5,
  LQP_EMPTY_MU_INTERVAL = 6,
  LQP_INADMISSIBLE_EXPONENTS = 7,
  LQP_INCOMPATIBLE_SOURCE = 8,
  LQP_UNSUPPORTED = 9,
  LQP_IO_ERROR = 10,
  LQP_CONFIG_ERROR = 11,
  LQP_INTERNAL_ERROR = 100
} lqp_status;

typedef struct lqp_report lqp_report;
typedef struct lqp_grid lqp_grid;
typedef struct lqp_hodge lqp_hodge;

LQP_API const char* lqp_version(void);
/* Message of the last failed call on this thread; "" if none. */
LQP_API const char* lqp_last_error(void);
LQP_API const char* lqp_status_name(lqp_status status);

/* ---- experiments ---- */

LQP_API size_t lqp_experiment_count(void);
/* Pointers stay valid for the lifetime of the process. */
LQP_API lqp_status lqp_experiment_info(size_t index, const char** kind, const char** anchor,
                                       const char** description);

/* Runs a JSON config. A report is produced for every config, including
 * invalid ones; its exit code (0/1/2/3) carries the outcome. Returns a
 * non-OK status only for null arguments or allocation failure. */
LQP_API lqp_status lqp_run(const char* config_json, lqp_report** out);
LQP_API int lqp_report_exit_code(const lqp_report* report);
LQP_API const char* lqp_report_json(const lqp_report* report);
/* output.report and output.csv_prefix from the config; "" when absent. */
LQP_API const char* lqp_report_output_path(const lqp_report* report);
LQP_API const char* lqp_report_csv_prefix(const lqp_report* report);
LQP_API size_t lqp_report_csv_count(const lqp_report* report);
LQP_API const char* lqp_report_csv_name(const lqp_report* report, size_t index);
LQP_API const char* lqp_report_csv_content(const lqp_report* report, size_t index);
LQP_API void lqp_report_free(lqp_report* report);

/* ---- periodic grids and the discrete Hodge system ---- */

/* Uniform grid on the flat circle (n = 1) or torus (n = 2, 3) with the
 * given side lengths and node counts. */
LQP_API lqp_status lqp_grid_create_periodic(int n, const double* lengths, const int* nodes,
                                            lqp_grid** out);
LQP_API int lqp_grid_dim(const lqp_grid* grid);
LQP_API size_t lqp_grid_size(const lqp_grid* grid);
LQP_API void lqp_grid_free(lqp_grid* grid);

LQP_API lqp_status lqp_hodge_create(const lqp_grid* grid, lqp_hodge** out);
LQP_API void lqp_hodge_free(lqp_hodge* hodge);
/* Length of a k-cochain vector. */
LQP_API lqp_status lqp_hodge_size(const lqp_hodge* hodge, int k, size_t* out);
LQP_API lqp_status lqp_hodge_harmonic_dimension(const lqp_hodge* hodge, int k, int* out);
LQP_API lqp_status lqp_hodge_spectral_gap(const lqp_hodge* hodge, double* out);
/* out = G in, both of length lqp_hodge_size(k). */
LQP_API lqp_status lqp_hodge_green(const lqp_hodge* hodge, int k, const double* in, size_t length,
                                   double* out);

/* ---- Riesz kernel bound ---- */

typedef enum lqp_admissibility {
  LQP_ADMISSIBLE = 0,
  LQP_BOUNDARY = 1,
  LQP_INADMISSIBLE = 2
} lqp_admissibility;

/* Young exponent s and || |x|^{1-n} ||_{L^s} on the ball of the given diameter. */
LQP_API lqp_status lqp_riesz_bound(int n, double p, double q, double diameter, double* s,
                                   double* kernel_norm, lqp_admissibility* admissibility);

#ifdef __cplusplus
}
#endif

#endif
