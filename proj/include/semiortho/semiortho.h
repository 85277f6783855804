#ifndef SEMIORTHO_SEMIORTHO_H
#define SEMIORTHO_SEMIORTHO_H

/*
 * C interface to the semiortho library.
 *
 * Matrices are passed as row-major arrays of n*n doubles, split into real and
 * imaginary parts; an imaginary pointer may be NULL for real data. Vectors
 * use the same split. Every object is an opaque handle released with its
 * _free function. Functions return SO_OK or an error status; the message for
 * the last failure on the calling thread is available from
 * so_last_error_message().
 */

#include <stddef.h>
#include <stdint.h>

#if defined(SEMIORTHO_BUILDING_LIBRARY)
#define SO_API __attribute__((visibility("default")))
#else
#define SO_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum so_status {
  SO_OK = 0,
  SO_INVALID_ARGUMENT,
  SO_DIMENSION_MISMATCH,
  SO_NOT_SQUARE,
  SO_NOT_HERMITIAN,
  SO_NOT_POSITIVE,
  SO_NOT_A_BOUNDED,
  SO_INVALID_EPSILON,
  SO_NOT_A_UNIT,
  SO_ZERO_NORM,
  SO_REAL_FIELD,
  SO_COMPLEX_FIELD,
  SO_RANK_TOO_SMALL,
  SO_IS_ISOMETRY,
  SO_SUBSET_HYPOTHESIS_FAILS,
  SO_NUMERICAL,
  SO_INTERNAL
} so_status;

typedef enum so_field { SO_FIELD_REAL = 0, SO_FIELD_COMPLEX = 1 } so_field;

typedef enum so_vec_route {
  SO_VEC_EXACT = 0,         /* <x,y>_A = 0 */
  SO_VEC_INNER_PRODUCT = 1, /* |<x,y>_A| <= eps ||x||_A ||y||_A */
  SO_VEC_DIRECT = 2         /* minimization of the defining functional */
} so_vec_route;

typedef enum so_op_route {
  SO_OP_DIRECT = 0,
  SO_OP_ATTAINMENT = 1, /* real field */
  SO_OP_THETA_SWEEP = 2, /* complex field */
  SO_OP_POINTWISE = 3   /* real field, needs M_A^T within M_A^S */
} so_op_route;

typedef enum so_side { SO_SIDE_RIGHT = 0, SO_SIDE_LEFT = 1 } so_side;

enum { SO_SELFTEST_INJECT_FAULT = 1, SO_SELFTEST_TIMING = 2 };

typedef struct so_tolerances {
  double hermitian_tol;
  double rank_tol;
  double orth_tol;
  double verdict_margin_tol;
  double cluster_tol;
} so_tolerances;

typedef struct so_left_params {
  double eps;
  double eps1;
  double t;
  double a;
  double b;
  double alpha_lo;
  double alpha_hi;
  double alpha;
  double beta;
} so_left_params;

typedef struct so_space so_space;
typedef struct so_operator so_operator;
typedef struct so_verdict so_verdict;
typedef struct so_attainment so_attainment;
typedef struct so_symmetry so_symmetry;

SO_API const char* so_version(void);
SO_API const char* so_status_name(so_status status);
SO_API const char* so_last_error_message(void);
SO_API void so_default_tolerances(so_tolerances* out);

/* Space: the positive operator A. tol may be NULL for defaults. */
SO_API so_status so_space_create(size_t n, const double* re, const double* im, so_field field,
                                 const so_tolerances* tol, so_space** out);
SO_API void so_space_free(so_space* space);
SO_API size_t so_space_dim(const so_space* space);
SO_API size_t so_space_rank(const so_space* space);
SO_API so_field so_space_field(const so_space* space);
SO_API so_status so_space_eigenvalues(const so_space* space, double* out);
/* Row-major n x (n - rank) orthonormal basis of N(A). */
SO_API so_status so_space_null_basis(const so_space* space, double* re, double* im);

/* Vectors */
SO_API so_status so_vec_inner(const so_space* space, const double* x_re, const double* x_im,
                              const double* y_re, const double* y_im, double* out_re,
                              double* out_im);
SO_API so_status so_vec_norm(const so_space* space, const double* x_re, const double* x_im,
                             double* out);
SO_API so_status so_vec_check(const so_space* space, const double* x_re, const double* x_im,
                              const double* y_re, const double* y_im, double eps,
                              so_vec_route route, so_verdict** out);
/* z = y - conj(<x,y>_A)/||x||_A^2 x (z = y when ||x||_A = 0). */
SO_API so_status so_vec_decompose(const so_space* space, const double* x_re, const double* x_im,
                                  const double* y_re, const double* y_im, double* z_re,
                                  double* z_im);

/* Operators */
SO_API so_status so_operator_create(const so_space* space, const double* re, const double* im,
                                    so_operator** out);
SO_API void so_operator_free(so_operator* op);
SO_API double so_operator_norm(const so_operator* op);
SO_API int so_operator_is_zero(const so_operator* op);
/* Row-major rank x rank reduction W* T W^-. */
SO_API so_status so_operator_tilde(const so_operator* op, double* re, double* im);
SO_API so_status so_operator_isometry(const so_operator* op, int* isometry, double* deviation);

SO_API so_status so_attainment_create(const so_operator* op, so_attainment** out);
SO_API void so_attainment_free(so_attainment* att);
SO_API double so_attainment_norm(const so_attainment* att);
SO_API size_t so_attainment_multiplicity(const so_attainment* att);
/* Row-major n x m, A-orthonormal columns spanning the attainment subspace. */
SO_API so_status so_attainment_basis(const so_attainment* att, double* re, double* im);

SO_API so_status so_op_check(const so_operator* t, const so_operator* s, double eps,
                             so_op_route route, so_verdict** out);
/* g(lambda) = ||T + lambda S||_A^2 - ||T||_A^2 + 2 eps ||T||_A ||S||_A |lambda| */
SO_API so_status so_op_defect(const so_operator* t, const so_operator* s, double eps,
                              double lambda_re, double lambda_im, double* out);
SO_API so_status so_attainment_subset(const so_operator* t, const so_operator* s,
                                      int* contained, double* residual);

/* Verdicts */
SO_API void so_verdict_free(so_verdict* v);
SO_API int so_verdict_holds(const so_verdict* v);
SO_API int so_verdict_boundary(const so_verdict* v);
SO_API double so_verdict_margin(const so_verdict* v);
SO_API double so_verdict_defect(const so_verdict* v);
SO_API const char* so_verdict_method(const so_verdict* v);
SO_API size_t so_verdict_dim(const so_verdict* v);
SO_API int so_verdict_lambda(const so_verdict* v, double* re, double* im);
SO_API int so_verdict_theta(const so_verdict* v, double* theta);
/* Return 1 and fill n entries when the witness vector is present. */
SO_API int so_verdict_x(const so_verdict* v, double* re, double* im);
SO_API int so_verdict_y(const so_verdict* v, double* re, double* im);

/* Symmetry classification (real field). */
SO_API so_status so_classify(const so_operator* t, double eps, so_side side, so_symmetry** out);
SO_API void so_symmetry_free(so_symmetry* sym);
SO_API const char* so_symmetry_kind(const so_symmetry* sym);
SO_API double so_symmetry_evidence(const so_symmetry* sym);
SO_API int so_symmetry_has_witness(const so_symmetry* sym);
SO_API int so_symmetry_verified(const so_symmetry* sym);
SO_API const char* so_symmetry_construction(const so_symmetry* sym);
SO_API size_t so_symmetry_multiplicity(const so_symmetry* sym);
SO_API int so_symmetry_sign_flipped(const so_symmetry* sym);
/* Row-major n x n witness operator. */
SO_API so_status so_symmetry_witness(const so_symmetry* sym, double* re, double* im);
SO_API int so_symmetry_left_params(const so_symmetry* sym, so_left_params* out);
/* The direct-route checks of the witness; which = 0 for the relation that
   must hold, 1 for the one that must fail. */
SO_API so_status so_symmetry_check(const so_symmetry* sym, int which, so_verdict** out);

/* Property suites. *json receives a string to release with so_string_free. */
SO_API so_status so_selftest_run(uint64_t seed, int trials, int flags, char** json,
                                 int* all_passed);
SO_API void so_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* SEMIORTHO_SEMIORTHO_H */
