#ifndef ELLIPTIC_QUINTIC_H
#define ELLIPTIC_QUINTIC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EqStatus {
  EQ_STATUS_OK = 0,
  EQ_STATUS_NULL_POINTER = 1,
  EQ_STATUS_DOMAIN = 2,
  EQ_STATUS_CONVERGENCE = 3,
  EQ_STATUS_SINGULAR_DENOMINATOR = 4,
  EQ_STATUS_NO_ADMISSIBLE_ROOT = 5,
  EQ_STATUS_NOT_A_ROOT = 6,
  EQ_STATUS_BRANCH_FAILURE = 7,
  EQ_STATUS_PARSE = 8,
  // Every modulus solves the instance (`x = 1`, `h = 0`).
  EQ_STATUS_UNDERDETERMINED = 9,
  // No relation or candidate within the requested bounds.
  EQ_STATUS_NOT_FOUND = 10,
  EQ_STATUS_INDEX_OUT_OF_RANGE = 11,
  EQ_STATUS_PANIC = 12,
} EqStatus;

// An integer polynomial found by lattice reduction.
typedef struct EqCandidate EqCandidate;

// Moduli with `x = dn(u)` and `h = sn(3u)`.
typedef struct EqModuli EqModuli;

// A claims report.
typedef struct EqReport EqReport;

// Certificates for every recovered modulus at `(x, h)`.
typedef struct EqSolve EqSolve;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static, NUL-terminated library version.
const char *eq_version(void);

// Static description of a status code.
const char *eq_status_message(enum EqStatus status);

// Frees a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void eq_string_free(char *s);

// sn, cn and dn at `(u, m)`.
//
// # Safety
// Out-pointers must be valid for writes.
enum EqStatus eq_jacobi(double u, double m, double *sn, double *cn, double *dn);

// Complete integral `K(m)`.
//
// # Safety
// `out` must be valid for writes.
enum EqStatus eq_complete_k(double m, double *out);

// Coefficients of the quintic in `Y`, constant term first, at real `x` and
// `h`. Both arrays need room for 6 values; imaginary parts are zero for
// `|x| <= 1`.
//
// # Safety
// `re` and `im` must be valid for 6 writes each.
enum EqStatus eq_family_coefficients(double x, double h, double *re, double *im);

// `k_r` for `r = num/den` with the residual `|K(1-m)/K(m) - sqrt(r)|`.
//
// # Safety
// Out-pointers must be valid for writes.
enum EqStatus eq_singular_modulus(uint64_t num, uint64_t den, double *k, double *residual);

// `dn(K/3)` at modulus `k`.
//
// # Safety
// `out` must be valid for writes.
enum EqStatus eq_dn_third(double k, double *out);

// Nested-radical `dn(K/3)`; `negated` flips the sign of the inner radical.
//
// # Safety
// `out` must be valid for writes.
enum EqStatus eq_dn_third_closed_form(double k, bool negated, double *out);

// Solves the quintic at `(x, h)`. Returns `Underdetermined` with a null
// handle for `x = 1, h = 0`.
//
// # Safety
// `out` must be valid for writes.
enum EqStatus eq_solve(double x, double h, struct EqSolve **out);

// Number of certificates; 0 for null.
//
// # Safety
// `handle` must be null or live.
size_t eq_solve_count(const struct EqSolve *handle);

// Recovered `m` of certificate `index` and its elliptic-root residual.
//
// # Safety
// `handle` must be live; out-pointers valid for writes.
enum EqStatus eq_solve_modulus(const struct EqSolve *handle,
                               size_t index,
                               double *m,
                               double *residual);

// The five roots of certificate `index`, elliptic root first, with their
// residuals. Each array needs room for 5 values.
//
// # Safety
// `handle` must be live; arrays valid for 5 writes each.
enum EqStatus eq_solve_roots(const struct EqSolve *handle,
                             size_t index,
                             double *re,
                             double *im,
                             double *residuals);

// # Safety
// `handle` must be null or live, and not used afterwards.
void eq_solve_free(struct EqSolve *handle);

// Recovers every admissible `m` for `(x, h)`. Returns `Underdetermined`
// with a null handle for `x = 1, h = 0`.
//
// # Safety
// `out` must be valid for writes.
enum EqStatus eq_recover_modulus(double x, double h, struct EqModuli **out);

// # Safety
// `handle` must be null or live.
size_t eq_moduli_count(const struct EqModuli *handle);

// Candidate `index`: `m`, `u`, quintic residual at `Y = sqrt(m)`, and
// whether `3u` lies on the reflected branch `2K - F`.
//
// # Safety
// `handle` must be live; out-pointers valid for writes.
enum EqStatus eq_moduli_get(const struct EqModuli *handle,
                            size_t index,
                            double *m,
                            double *u,
                            double *residual,
                            bool *reflected);

// # Safety
// `handle` must be null or live, and not used afterwards.
void eq_moduli_free(struct EqModuli *handle);

// Runs the full audit.
//
// # Safety
// `out` must be valid for writes.
enum EqStatus eq_audit_run(struct EqReport **out);

// Claim counts, and whether no gating claim failed.
//
// # Safety
// `handle` must be live; out-pointers valid for writes.
enum EqStatus eq_report_summary(const struct EqReport *handle,
                                size_t *pass,
                                size_t *fail,
                                size_t *undetermined,
                                bool *exit_ok);

// Renders the report as text or JSON lines into a new string.
//
// # Safety
// `handle` must be live; `out` valid for writes.
enum EqStatus eq_report_render(const struct EqReport *handle, bool json_lines, char **out);

// # Safety
// `handle` must be null or live, and not used afterwards.
void eq_report_free(struct EqReport *handle);

// Recognizes the decimal string `value` read at `precision` bits. Returns
// `NotFound` with a null handle when no relation fits the bounds.
//
// # Safety
// `value` must be a NUL-terminated string; `out` valid for writes.
enum EqStatus eq_recognize(const char *value,
                           uint32_t precision,
                           size_t max_degree,
                           int64_t max_height,
                           struct EqCandidate **out);

// # Safety
// `handle` must be null or live.
size_t eq_candidate_degree(const struct EqCandidate *handle);

// Copies the coefficients, constant term first, into `out` (room for
// `degree + 1` values).
//
// # Safety
// `handle` must be live; `out` valid for `len` writes.
enum EqStatus eq_candidate_coefficients(const struct EqCandidate *handle, int64_t *out, size_t len);

// The polynomial as text, e.g. `Y^2 - 2`; free with [`eq_string_free`].
//
// # Safety
// `handle` must be null or live.
char *eq_candidate_polynomial(const struct EqCandidate *handle);

// # Safety
// `handle` must be null or live, and not used afterwards.
void eq_candidate_free(struct EqCandidate *handle);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ELLIPTIC_QUINTIC_H */
