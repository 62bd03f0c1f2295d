/* C interface to the free Jacobi numerics library.
 *
 * Every fallible call returns fjl_status; on failure fjl_last_error() holds a
 * message for the calling thread until its next failing call. Handles are
 * opaque and owned by the caller, who releases them with the matching
 * *_destroy function (NULL is accepted). Strings returned by handle accessors
 * live as long as the handle.
 */
#ifndef FJL_FJL_H
#define FJL_FJL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FJL_API __declspec(dllexport)
#else
#define FJL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fjl_status {
  FJL_OK = 0,
  FJL_ERR_INVALID_ARGUMENT = 1,
  FJL_ERR_OUT_OF_DOMAIN = 2,
  FJL_ERR_NON_CONVERGENCE = 3,
  FJL_ERR_POSITIVITY_LOSS = 4,
  FJL_ERR_BUFFER_TOO_SMALL = 5,
  FJL_ERR_INTERNAL = 6
} fjl_status;

FJL_API const char* fjl_last_error(void);
FJL_API const char* fjl_status_name(fjl_status s);
FJL_API const char* fjl_version(void);

/* ---- measures ---------------------------------------------------------- */

typedef struct fjl_measure fjl_measure;

/* family: "mu" (mu_{lambda,theta} on [x_-, x_+]), "nu" (nu_lambda),
 * "nu_theta" (nu_{lambda,theta}), "xi" (xi_lambda). theta is ignored by the
 * lambda-only families. */
FJL_API fjl_status fjl_measure_create(const char* family, double lambda, double theta, fjl_measure** out);
FJL_API void fjl_measure_destroy(fjl_measure* m);

FJL_API fjl_status fjl_measure_name(const fjl_measure* m, const char** out);
FJL_API fjl_status fjl_measure_support(const fjl_measure* m, double* lo, double* hi);
FJL_API fjl_status fjl_measure_density(const fjl_measure* m, double x, double* out);
FJL_API fjl_status fjl_measure_cdf(const fjl_measure* m, double x, double* out);
FJL_API fjl_status fjl_measure_ac_mass(const fjl_measure* m, double* out);
/* Stores the number of atoms in *count and writes them when cap allows.
 * cap = 0 with NULL buffers is a pure query; a nonzero cap smaller than the
 * count gives FJL_ERR_BUFFER_TOO_SMALL. */
FJL_API fjl_status fjl_measure_atoms(const fjl_measure* m, double* locations, double* weights, size_t cap,
                                     size_t* count);
/* out receives m_0 .. m_{k_max}. */
FJL_API fjl_status fjl_measure_moments(const fjl_measure* m, int k_max, double* out);
FJL_API fjl_status fjl_measure_cauchy(const fjl_measure* m, double re, double im, double* out_re, double* out_im);
FJL_API fjl_status fjl_measure_stieltjes_invert(const fjl_measure* m, double x, double* out);

/* ---- polynomials and recurrences -------------------------------------- */

/* family: "Q_lambda", "P_lambda", "Q_lambda_theta". coeffs receives the n+1
 * monomial coefficients, constant term first. */
FJL_API fjl_status fjl_poly_family(const char* family, double lambda, double theta, int n, double* coeffs);

/* alpha receives alpha_0..alpha_{n_max}; omega receives omega_1..omega_{n_max}. */
FJL_API fjl_status fjl_jacobi_stated(const char* family, double lambda, double theta, int n_max, double* alpha,
                                     double* omega);
FJL_API fjl_status fjl_jacobi_extract(const fjl_measure* m, int n_max, double* alpha, double* omega);

/* Vacuum moments of a+ + a + alpha_N on levels 0..dim-1; alpha holds dim
 * entries, omega holds dim-1 entries, out receives k_max+1 values. */
FJL_API fjl_status fjl_fock_moments(const double* alpha, const double* omega, int dim, int k_max, double* out);

/* Normalised drift coefficient residual of e^{nt} F_n at theta = 1/2;
 * family: "P", "Q" or "P_unrooted". */
FJL_API fjl_status fjl_martingale_residual(const char* family, double lambda, int n, double* out);

/* ---- verification suites ----------------------------------------------- */

typedef struct fjl_report fjl_report;

typedef struct fjl_verify_options {
  const double* lambdas; /* NULL or n_lambdas == 0: suite default */
  size_t n_lambdas;
  const double* thetas;
  size_t n_thetas;
  int n_max;          /* 0: suite default */
  int k_max;          /* 0: suite default */
  double tol;         /* <= 0: suite default */
  const char* family; /* NULL or "": suite default */
  uint64_t seed;
} fjl_verify_options;

FJL_API void fjl_verify_options_init(fjl_verify_options* o);
/* suite: orthogonality, jacobi, fock, renorm, martingale, flows, mass, cauchy.
 * A report is produced whether or not the checks pass. */
FJL_API fjl_status fjl_verify(const char* suite, const fjl_verify_options* o, fjl_report** out);
FJL_API void fjl_report_destroy(fjl_report* r);
FJL_API int fjl_report_pass(const fjl_report* r);
FJL_API double fjl_report_max_residual(const fjl_report* r);
FJL_API size_t fjl_report_entry_count(const fjl_report* r);
FJL_API fjl_status fjl_report_entry(const fjl_report* r, size_t i, const char** label, double* residual, double* tol,
                                    int* pass);
FJL_API const char* fjl_report_json(const fjl_report* r);

/* ---- Monte Carlo --------------------------------------------------------- */

typedef struct fjl_sim fjl_sim;

typedef struct fjl_sim_config {
  double lambda;
  double theta;
  int d;
  int trials;
  double dt;
  const double* times; /* NULL: {0, 0.2, 0.4} */
  size_t n_times;
  uint64_t seed;
  int n_max;
  int bins;
  unsigned threads; /* 0: hardware concurrency */
} fjl_sim_config;

FJL_API void fjl_sim_config_init(fjl_sim_config* c);
FJL_API fjl_status fjl_simulate(const fjl_sim_config* c, fjl_sim** out);
FJL_API void fjl_sim_destroy(fjl_sim* s);
FJL_API size_t fjl_sim_time_count(const fjl_sim* s);
/* NaN when the effective parameters leave the supported regime. */
FJL_API double fjl_sim_ks(const fjl_sim* s, size_t time_index);
FJL_API fjl_status fjl_sim_spectrum(const fjl_sim* s, size_t time_index, const double** data, size_t* count);
/* family 'P' or 'Q'; n from 1. */
FJL_API fjl_status fjl_sim_series(const fjl_sim* s, char family, int n, size_t time_index, double* mean,
                                  double* stderr_out);
FJL_API double fjl_sim_seconds(const fjl_sim* s);
FJL_API const char* fjl_sim_histogram_csv(const fjl_sim* s);
FJL_API const char* fjl_sim_series_csv(const fjl_sim* s);
FJL_API const char* fjl_sim_manifest_json(const fjl_sim* s);

#ifdef __cplusplus
}
#endif

#endif
