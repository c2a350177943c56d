/*
 * mpinv C API.
 *
 * Every function returns an mpinv_status.  On failure a human-readable
 * message is available from mpinv_last_error() until the next call on the
 * same thread.  Matrices are opaque, immutable handles; strings returned
 * through `char**` are owned by the caller and released with
 * mpinv_string_free().  Complex entries cross the boundary as interleaved
 * (re, im) doubles in row-major order.
 */
#ifndef MPINV_MPINV_H
#define MPINV_MPINV_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MPINV_BUILDING)
#    define MPINV_API __declspec(dllexport)
#  else
#    define MPINV_API __declspec(dllimport)
#  endif
#else
#  define MPINV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mpinv_status {
  MPINV_OK = 0,
  MPINV_ERR_INVALID_ARGUMENT = 1,
  MPINV_ERR_DIMENSION = 2,
  MPINV_ERR_NON_FINITE = 3,
  MPINV_ERR_NO_CONVERGENCE = 4,
  MPINV_ERR_PRECONDITION = 5,
  MPINV_ERR_PARSE = 6,
  MPINV_ERR_IO = 7,
  MPINV_ERR_INTERNAL = 8
} mpinv_status;

typedef struct mpinv_matrix mpinv_matrix;

typedef struct mpinv_tolerance {
  double rank_tol_factor;
  double eq_tol;
} mpinv_tolerance;

MPINV_API mpinv_tolerance mpinv_default_tolerance(void);
MPINV_API const char* mpinv_last_error(void);
MPINV_API const char* mpinv_status_name(mpinv_status status);
MPINV_API void mpinv_string_free(char* s);

/* ---- matrices ---------------------------------------------------------- */

/* `interleaved` holds 2 * rows * cols doubles; NULL gives the zero matrix. */
MPINV_API mpinv_status mpinv_matrix_create(size_t rows, size_t cols, const double* interleaved,
                                           mpinv_matrix** out);
MPINV_API void mpinv_matrix_destroy(mpinv_matrix* m);
MPINV_API size_t mpinv_matrix_rows(const mpinv_matrix* m);
MPINV_API size_t mpinv_matrix_cols(const mpinv_matrix* m);
/* Copies 2 * rows * cols doubles into `out`; `capacity` counts doubles. */
MPINV_API mpinv_status mpinv_matrix_copy_data(const mpinv_matrix* m, double* out, size_t capacity);

MPINV_API mpinv_status mpinv_matrix_from_json(const char* text, mpinv_matrix** out);
MPINV_API mpinv_status mpinv_matrix_to_json(const mpinv_matrix* m, char** out);
MPINV_API mpinv_status mpinv_matrix_read_file(const char* path, mpinv_matrix** out);
MPINV_API mpinv_status mpinv_matrix_write_file(const mpinv_matrix* m, const char* path);

/* ---- pseudoinverse ----------------------------------------------------- */

/* `rank` and `relative_residuals` (4 doubles: r1..r4) may be NULL. */
MPINV_API mpinv_status mpinv_pinv(const mpinv_matrix* a, const mpinv_tolerance* tol,
                                  mpinv_matrix** out, size_t* rank, double* relative_residuals);
MPINV_API mpinv_status mpinv_pinv_report_json(const mpinv_matrix* a, const mpinv_tolerance* tol,
                                              char** out);
MPINV_API mpinv_status mpinv_penrose_residuals(const mpinv_matrix* a, const mpinv_matrix* x,
                                               double* relative_residuals);
/* `formulation` is a name such as "P24_III". */
MPINV_API mpinv_status mpinv_formulation_holds(const mpinv_matrix* a, const mpinv_matrix* x,
                                               const char* formulation,
                                               const mpinv_tolerance* tol, int* holds);

/* ---- reverse order law ------------------------------------------------- */

/* `condition` is a name such as "ROL_DIRECT" or "T31_II". */
MPINV_API mpinv_status mpinv_evaluate_condition(const mpinv_matrix* a, const mpinv_matrix* b,
                                                const char* condition,
                                                const mpinv_tolerance* tol, int* holds,
                                                double* residual);
MPINV_API mpinv_status mpinv_rol_report_json(const mpinv_matrix* a, const mpinv_matrix* b,
                                             const mpinv_tolerance* tol, char** out);

/* ---- classification ---------------------------------------------------- */

MPINV_API mpinv_status mpinv_is_mp_hermitian(const mpinv_matrix* a, const mpinv_tolerance* tol,
                                             int* holds);
MPINV_API mpinv_status mpinv_is_partial_isometry(const mpinv_matrix* a,
                                                 const mpinv_tolerance* tol, int* holds);
/* Classification plus the theorem51/theorem54 reports (square input only
 * for the latter two; they are null in the JSON otherwise). */
MPINV_API mpinv_status mpinv_classify_json(const mpinv_matrix* a, const mpinv_tolerance* tol,
                                           char** out);
MPINV_API mpinv_status mpinv_decompose_json(const mpinv_matrix* a, const mpinv_tolerance* tol,
                                            char** out);
MPINV_API mpinv_status mpinv_conorm(const mpinv_matrix* a, const mpinv_tolerance* tol,
                                    double* conorm, double* op_norm, double* pinv_norm);

/* ---- generators -------------------------------------------------------- */

typedef enum mpinv_gen_kind {
  MPINV_GEN_REGULAR = 0,
  MPINV_GEN_MP_HERMITIAN = 1,
  MPINV_GEN_PARTIAL_ISOMETRY = 2,
  MPINV_GEN_HERMITIAN_PARTIAL_ISOMETRY = 3,
  MPINV_GEN_PRESCRIBED_SINGULAR_VALUES = 4
} mpinv_gen_kind;

typedef struct mpinv_gen_params {
  size_t rows;             /* REGULAR; other kinds are square n = rows */
  size_t cols;             /* REGULAR */
  size_t rank;             /* REGULAR, MP_HERMITIAN, PARTIAL_ISOMETRY */
  double sv_low;           /* REGULAR */
  double sv_high;          /* REGULAR */
  size_t positive;         /* HERMITIAN_PARTIAL_ISOMETRY; MP_HERMITIAN if has_positive */
  size_t negative;         /* HERMITIAN_PARTIAL_ISOMETRY */
  int has_positive;        /* MP_HERMITIAN: force the +1 count */
  double max_condition;    /* MP_HERMITIAN; <= 0 selects the default */
  const double* singular_values; /* PRESCRIBED_SINGULAR_VALUES */
  size_t singular_value_count;
  uint64_t seed;
} mpinv_gen_params;

MPINV_API mpinv_gen_params mpinv_default_gen_params(void);
MPINV_API mpinv_status mpinv_generate(mpinv_gen_kind kind, const mpinv_gen_params* params,
                                      mpinv_matrix** out);

/* ---- fuzzing ----------------------------------------------------------- */

typedef struct mpinv_fuzz_config {
  const char* suite; /* penrose | formulations | rol | mph | isometry | all */
  size_t trials;
  size_t max_dim;
  uint64_t seed;
  mpinv_tolerance tolerance;
  int record_verdicts;
  unsigned threads; /* 0: hardware concurrency */
} mpinv_fuzz_config;

MPINV_API mpinv_fuzz_config mpinv_default_fuzz_config(void);
/* `failures` (may be NULL) receives the number of violated properties. */
MPINV_API mpinv_status mpinv_fuzz_json(const mpinv_fuzz_config* config, char** out,
                                       size_t* failures);

#ifdef __cplusplus
}
#endif

#endif /* MPINV_MPINV_H */
