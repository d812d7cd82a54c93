/* C interface to the conespec library. All functions return a cs_status; on
 * failure cs_last_error() describes the problem (thread-local). Handles are
 * opaque and released with the matching *_free function, which accepts NULL. */
#ifndef CONESPEC_H
#define CONESPEC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CS_API __declspec(dllexport)
#else
#define CS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cs_status {
  CS_OK = 0,
  CS_ERR_INVALID_ARGUMENT = 1,
  CS_ERR_DOMAIN = 2,
  CS_ERR_DIMENSION_MISMATCH = 3,
  CS_ERR_NOT_ORTHOGONAL = 4,
  CS_ERR_NOT_SPECIAL_ORTHOGONAL = 5,
  CS_ERR_CAP_EXCEEDED = 6,
  CS_ERR_TOLERANCE = 7,
  CS_ERR_CONVERGENCE = 8,
  CS_ERR_RATE_COLLISION = 9,
  CS_ERR_OVERFLOW = 10,
  CS_ERR_PARSE = 11,
  CS_ERR_BUFFER_TOO_SMALL = 12,
  CS_ERR_NULL_POINTER = 13,
  CS_ERR_INTERNAL = 14
} cs_status;

CS_API const char* cs_version(void);
CS_API const char* cs_status_string(cs_status status);
/* Message of the last failing call on this thread; "" after success. */
CS_API const char* cs_last_error(void);

/* ---- tolerances ---------------------------------------------------------- */

typedef struct cs_tolerances {
  double matrix;
  double coefficient;
  double residue;
  double imaginary;
  double rate_collision;
  double quad_rel;
  double quad_abs;
} cs_tolerances;

CS_API cs_status cs_tolerances_default(cs_tolerances* out);
/* Defaults overridden by CONE_SPECTRA_TOL="key=value,...". */
CS_API cs_status cs_tolerances_from_env(cs_tolerances* out);
/* Applies a "key=value,..." list on top of *inout. */
CS_API cs_status cs_tolerances_parse(const char* spec, cs_tolerances* inout);

/* ---- groups and spin structures ------------------------------------------ */

typedef struct cs_group cs_group;
typedef struct cs_spin_structures cs_spin_structures;

/* Catalog group; params_json is a JSON object such as {"n": 8} or NULL. */
CS_API cs_status cs_group_catalog(int m, const char* name, const char* params_json, const cs_tolerances* tol,
                                  cs_group** out);
/* Group descriptor document {"m", "kind", "name", "params", "generators"}. */
CS_API cs_status cs_group_from_json(const char* json, const cs_tolerances* tol, cs_group** out);
CS_API void cs_group_free(cs_group* group);
CS_API cs_status cs_group_order(const cs_group* group, size_t* out);
CS_API cs_status cs_group_dimension(const cs_group* group, int* out);
/* The string lives as long as the group. */
CS_API cs_status cs_group_name(const cs_group* group, const char** out);
/* Row-major m*m entries of element i. */
CS_API cs_status cs_group_element(const cs_group* group, size_t i, double* out);

CS_API cs_status cs_spin_structures_enumerate(const cs_group* group, const cs_tolerances* tol,
                                              cs_spin_structures** out);
CS_API void cs_spin_structures_free(cs_spin_structures* s);
CS_API cs_status cs_spin_structures_count(const cs_spin_structures* s, size_t* out);

typedef struct cs_lift_report {
  double max_homomorphism_defect;
  double max_cover_defect; /* max over elements of |Ad(eps(g)) - g| */
  double max_norm_defect;
  int ok;
} cs_lift_report;

CS_API cs_status cs_spin_structure_verify(const cs_spin_structures* s, size_t id, const cs_tolerances* tol,
                                          cs_lift_report* out);
/* +1/-1 per group generator; *count receives the number of generators.
 * Pass out = NULL, capacity = 0 to query the size only. */
CS_API cs_status cs_spin_structure_generator_signs(const cs_spin_structures* s, size_t id, int* out, size_t capacity,
                                                   size_t* count);

/* ---- sphere spectra ------------------------------------------------------- */

/* plus and minus receive k_max + 1 multiplicities each. */
CS_API cs_status cs_dirac_spectrum_round(int m, int rank, int k_max, uint64_t* plus, uint64_t* minus);

typedef struct cs_quotient_diagnostics {
  double max_residue;
  double max_imaginary;
} cs_quotient_diagnostics;

CS_API cs_status cs_dirac_spectrum_quotient(const cs_spin_structures* s, size_t id, int rank, int k_max,
                                            const cs_tolerances* tol, uint64_t* plus, uint64_t* minus,
                                            cs_quotient_diagnostics* diagnostics);

CS_API cs_status cs_harmonic_dimension(int m, int k, uint64_t* out);

typedef struct cs_form_entry {
  int m;
  int q;
  int table_q;
  int k;
  char label[32];
  double eigenvalue;
  double printed_eigenvalue;
  int hodge_dual;
} cs_form_entry;

/* Pass out = NULL, capacity = 0 to query the entry count only. */
CS_API cs_status cs_laplace_form_spectrum(int m, int q, int k, cs_form_entry* out, size_t capacity, size_t* count);

/* ---- critical rates -------------------------------------------------------- */

typedef struct cs_rate_set cs_rate_set;

typedef struct cs_rate {
  double beta;
  uint64_t d;
} cs_rate;

typedef enum cs_index_convention { CS_CONVENTION_CFS = 0, CS_CONVENTION_ACF = 1 } cs_index_convention;

/* beta = lambda - (m-1)/2 + delta, d = multiplicity. */
CS_API cs_status cs_rates_from_spectrum(const double* lambda, const uint64_t* mult, size_t n, int m, double delta,
                                        cs_rate_set** out);
/* Laplace critical rates on q-forms with the tabulated lambda_{q-1}, lambda_q.
 * The optional mixed list supplies lambda_{q-1,q} (no table exists). */
CS_API cs_status cs_rates_laplace(int m, int q, int k_max, const double* mixed_lambda, const uint64_t* mixed_mult,
                                  size_t n_mixed, cs_rate_set** out);
CS_API void cs_rate_set_free(cs_rate_set* rates);
CS_API cs_status cs_rate_set_size(const cs_rate_set* rates, size_t* out);
CS_API cs_status cs_rate_set_get(const cs_rate_set* rates, size_t i, cs_rate* out);
CS_API cs_status cs_rate_set_dropped(const cs_rate_set* rates, size_t* out);
/* The convention string lives as long as the set. */
CS_API cs_status cs_rate_set_info(const cs_rate_set* rates, int* m, double* delta, const char** convention);

CS_API cs_status cs_wall_crossing_jump(const cs_rate_set* rates, double beta2, double beta1, double tol,
                                       int64_t* out);
CS_API cs_status cs_index_difference(const cs_rate_set* rates, double beta2, double beta1,
                                     cs_index_convention convention, double tol, int64_t* out);

typedef struct cs_ledger_result {
  int64_t total;
  int has_dims;
  int64_t alternating_sum;
  int exactness_ok;
} cs_ledger_result;

/* dims: {ker, xker, xcoker, coker} or NULL. */
CS_API cs_status cs_gluing_index_ledger(int64_t ind_cfs, int64_t ind_acf, const int64_t* dims,
                                        cs_ledger_result* out);

/* ---- mode blocks ------------------------------------------------------------ */

typedef struct cs_mode_block {
  int m;
  double lambda;
  double mu;
  double delta;
} cs_mode_block;

/* "mu=0", "lambda=0" or "general". */
CS_API cs_status cs_mode_regime(const cs_mode_block* block, const char** out);
/* potential receives [[p00, p01], [p10, p11]] row-major. */
CS_API cs_status cs_mode_operator(const cs_mode_block* block, double r, double* radial, double* potential);
CS_API cs_status cs_mode_eigencurve(double lambda, double mu, const double* r, size_t n, double* plus,
                                    double* minus);
CS_API cs_status cs_modified_bessel(double nu, double x, double* i, double* k);

typedef struct cs_solution_info {
  char name[32];
  double exponent_at_zero;
  double exponent_at_infinity;
  char behaviour_at_zero[16];
  char behaviour_at_infinity[16];
  int degenerate;
} cs_solution_info;

/* index is 0 or 1. */
CS_API cs_status cs_kernel_solution_info(const cs_mode_block* block, size_t index, cs_solution_info* out);
CS_API cs_status cs_kernel_solution_eval(const cs_mode_block* block, size_t index, const double* r, size_t n,
                                         double* f_plus, double* f_minus);

typedef struct cs_kernel_report {
  double max_residual;
  double max_integrator_deviation;
  double residual[2];
  double deviation[2];
  size_t points;
} cs_kernel_report;

/* Grid must lie in [1e-2, 50]; the integrator cross-check runs on [lo, hi]. */
CS_API cs_status cs_verify_kernel_basis(const cs_mode_block* block, const double* grid, size_t n,
                                        double integrator_lo, double integrator_hi, cs_kernel_report* out);

/* ---- right inverse ---------------------------------------------------------- */

typedef struct cs_function_pair cs_function_pair;
typedef double (*cs_scalar_fn)(double r, void* user);

CS_API cs_status cs_function_pair_gaussian(double center, double width, double amp_plus, double amp_minus,
                                           double floor, cs_function_pair** out);
CS_API cs_status cs_function_pair_bump(double a, double b, double amp_plus, double amp_minus, cs_function_pair** out);
CS_API cs_status cs_function_pair_samples(const double* r, const double* g_plus, const double* g_minus, size_t n,
                                          cs_function_pair** out);
/* Either callback may be NULL (zero component). */
CS_API cs_status cs_function_pair_callback(double a, double b, cs_scalar_fn plus, cs_scalar_fn minus, void* user,
                                           cs_function_pair** out);
CS_API cs_status cs_function_pair_combine(double alpha, const cs_function_pair* x, double beta,
                                          const cs_function_pair* y, cs_function_pair** out);
CS_API void cs_function_pair_free(cs_function_pair* g);
CS_API cs_status cs_function_pair_support(const cs_function_pair* g, double* a, double* b);
CS_API cs_status cs_function_pair_eval(const cs_function_pair* g, const double* r, size_t n, double* g_plus,
                                       double* g_minus);

/* coeff_from_infinity and coeff_from_zero may be NULL. */
CS_API cs_status cs_apply_right_inverse(const cs_mode_block* block, const cs_function_pair* g, const double* r,
                                        size_t n, const cs_tolerances* tol, double* f_plus, double* f_minus,
                                        double* coeff_from_infinity, double* coeff_from_zero);

typedef struct cs_greens_report {
  double max_residual;
  double max_g;
  double boundary_coefficient;
  double boundary_radius;
  double calibration;
  size_t points;
} cs_greens_report;

CS_API cs_status cs_verify_right_inverse(const cs_mode_block* block, const cs_function_pair* g, size_t points,
                                         const cs_tolerances* tol, cs_greens_report* out);

#ifdef __cplusplus
}
#endif

#endif /* CONESPEC_H */
