/* blockqn — trust-region quasi-Newton minimization driven by batched
 * forward-AD Hessian samples.
 *
 * C interface to the shared library: opaque handles, integer status codes,
 * and a thread-local last-error message. All array arguments are dense
 * doubles; matrices are column-major.
 */
#ifndef BLOCKQN_H
#define BLOCKQN_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct bqn_problem bqn_problem;
typedef struct bqn_result bqn_result;

/* Error codes returned by fallible functions. */
enum {
  BQN_OK = 0,
  BQN_ERROR_INVALID_ARGUMENT = 1,
  BQN_ERROR_EVALUATION = 2,
  BQN_ERROR_NUMERICAL = 3,
  BQN_ERROR_INTERNAL = 4
};

/* Terminal run status (bqn_result_status). */
enum {
  BQN_STATUS_CONVERGED = 0,
  BQN_STATUS_MAX_ITERATIONS = 1,
  BQN_STATUS_MAX_GHS = 2,
  BQN_STATUS_TRUST_REGION_COLLAPSE = 3,
  BQN_STATUS_NUMERICAL_FAILURE = 4
};

enum { BQN_UPDATE_SR1 = 0, BQN_UPDATE_PSB = 1 };

enum {
  BQN_STRATEGY_S1 = 0,
  BQN_STRATEGY_S2 = 1,
  BQN_STRATEGY_S3 = 2,
  BQN_STRATEGY_S4 = 3,
  BQN_STRATEGY_S5 = 4,
  BQN_STRATEGY_S6 = 5
};

enum {
  BQN_CLASS_GLOBAL_MIN = 0,
  BQN_CLASS_SECONDARY_MIN = 1,
  BQN_CLASS_OTHER = 2
};

typedef struct bqn_options {
  int32_t w;              /* sample half-width; blocks carry 2w-1 directions */
  double epsilon;         /* gradient-norm convergence tolerance */
  double delta;           /* pseudo-inverse tolerance of the QN updates */
  double delta_max;       /* trust-region radius cap */
  int32_t update;         /* BQN_UPDATE_* */
  int32_t strategy;       /* BQN_STRATEGY_* */
  int32_t pflag;          /* nonzero: preliminary secant update before the block update */
  int64_t max_iterations;
  int64_t max_ghs;        /* budget of combined gradient-and-Hessian samples */
  uint64_t rng_seed;
} bqn_options;

typedef struct bqn_trace_record {
  int64_t k;
  int64_t n_ghs;
  int64_t n_f;
  double f;
  double grad_norm;
  double delta; /* trust-region radius after this iteration */
  double rho;
  int32_t accepted;
} bqn_trace_record;

/* Message for the most recent error on this thread; empty string if none. */
const char* bqn_last_error(void);

int bqn_problem_create_rosenbrock(bqn_problem** out, int64_t n, double a);
/* a_colmajor: n*n symmetric matrix; c: length n (may be NULL for zero). */
int bqn_problem_create_quadratic(bqn_problem** out, int64_t n,
                                 const double* a_colmajor, const double* c);
/* SPD quadratic with geometrically spaced eigenvalues in [eig_lo, eig_hi] and
 * a seeded random eigenbasis; minimizer at the origin. */
int bqn_problem_create_quadratic_spd(bqn_problem** out, int64_t n, double eig_lo,
                                     double eig_hi, uint64_t seed);
void bqn_problem_destroy(bqn_problem* p);
int64_t bqn_problem_dimension(const bqn_problem* p);
int bqn_problem_value(const bqn_problem* p, const double* x, double* f_out);
int bqn_problem_gradient(const bqn_problem* p, const double* x, double* g_out);

/* Fills opts with the defaults (w=4, epsilon=1e-5, delta=1e-12, delta_max=100,
 * SR1, strategy S4, pflag=0, max_iterations=max_ghs=100000, rng_seed=0). */
void bqn_options_defaults(bqn_options* opts);

int bqn_minimize(const bqn_problem* p, const double* x0, const bqn_options* opts,
                 bqn_result** out);
void bqn_result_destroy(bqn_result* r);

int bqn_result_status(const bqn_result* r);
double bqn_result_f(const bqn_result* r);
double bqn_result_grad_norm(const bqn_result* r);
int bqn_result_x(const bqn_result* r, double* x_out, int64_t n);
int64_t bqn_result_n_iterations(const bqn_result* r);
int64_t bqn_result_n_ghs(const bqn_result* r);
int64_t bqn_result_n_f(const bqn_result* r);
/* Count of iterations where the inverse secant condition H Y = S failed its
 * tolerance despite an unthresholded update (diagnostic; 0 in healthy runs). */
int64_t bqn_result_exactness_violations(const bqn_result* r);
const char* bqn_result_message(const bqn_result* r);

int64_t bqn_result_trace_size(const bqn_result* r);
int bqn_result_trace_get(const bqn_result* r, int64_t index, bqn_trace_record* rec_out);

/* BQN_CLASS_* for a terminal Rosenbrock iterate. */
int bqn_classify_rosenbrock(const double* x, int64_t n);

/* Deterministic helpers for reproducible experiment drivers. */
uint64_t bqn_mix_seed(uint64_t seed, uint64_t stream);
int bqn_draw_uniform(uint64_t seed, int64_t n, double lo, double hi, double* out);

#ifdef __cplusplus
}
#endif

#endif /* BLOCKQN_H */
