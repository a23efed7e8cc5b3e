#ifndef MERMIN_H
#define MERMIN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result codes.
typedef enum MerminStatus {
  MERMIN_STATUS_OK = 0,
  MERMIN_STATUS_NULL_POINTER = 1,
  MERMIN_STATUS_INVALID_ARGUMENT = 2,
  MERMIN_STATUS_PARSE = 3,
  MERMIN_STATUS_DIMENSION_MISMATCH = 4,
  MERMIN_STATUS_UNSUPPORTED = 5,
  MERMIN_STATUS_VERIFICATION_FAILED = 6,
  MERMIN_STATUS_PANIC = 7,
} MerminStatus;

// Optimization mode for [`mermin_maximize`].
typedef enum MerminMode {
  // One `(x, y)` pair shared by all qubits.
  MERMIN_MODE_UNIFORM = 0,
  // Independent `(x, y)` per qubit.
  MERMIN_MODE_GENERAL = 1,
} MerminMode;

// Opaque linear combination of Pauli words.
typedef struct MerminPauliSum MerminPauliSum;

// Opaque state vector.
typedef struct MerminState MerminState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *mermin_version(void);

// Message for the last failed call on this thread, or NULL. The pointer is
// valid until the next failing call on the same thread.
const char *mermin_last_error_message(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void mermin_string_free(char *s);

// Builds a named state (`u3`, `ghz4`, `v31`, `tv41`, ...). `coeffs_re` and
// `coeffs_im` hold `n_coeffs` pair coefficients for the symmetrized
// families; pass `n_coeffs = 0` for the defaults. `coeffs_im` may be NULL.
//
// # Safety
// `id` must be a NUL-terminated string; coefficient arrays must hold
// `n_coeffs` values; `out` must be writable.
enum MerminStatus mermin_state_named(const char *id,
                                     const double *coeffs_re,
                                     const double *coeffs_im,
                                     uintptr_t n_coeffs,
                                     struct MerminState **out);

// Builds a state from `2^n` amplitudes. `im` may be NULL for real vectors.
//
// # Safety
// `re` (and `im` when non-NULL) must hold `len` values; `out` must be writable.
enum MerminStatus mermin_state_from_amplitudes(uint32_t n,
                                               const double *re,
                                               const double *im,
                                               uintptr_t len,
                                               struct MerminState **out);

// Releases a state. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void mermin_state_free(struct MerminState *s);

// Number of qubits, or 0 for NULL.
//
// # Safety
// `s` must be NULL or a live handle.
uint32_t mermin_state_qubits(const struct MerminState *s);

// Copies the `2^n` amplitudes into `re_out` and `im_out`.
//
// # Safety
// `s` must be a live handle; both buffers must hold `len` values.
enum MerminStatus mermin_state_amplitudes(const struct MerminState *s,
                                          double *re_out,
                                          double *im_out,
                                          uintptr_t len);

// Serializes a state as `{"n": .., "amps": [[re, im], ...]}`.
//
// # Safety
// `s` must be a live handle; `out` must be writable. Free the result with
// [`mermin_string_free`].
enum MerminStatus mermin_state_to_json(const struct MerminState *s, char **out);

// Parses a Pauli sum such as `s(1,2,2) - 2*s(2,1,2)`. With `n = 0` the
// qubit count is taken from the first word.
//
// # Safety
// `text` must be NUL-terminated; `out` must be writable.
enum MerminStatus mermin_pauli_parse(const char *text, uint32_t n, struct MerminPauliSum **out);

// Releases a Pauli sum. NULL is ignored.
//
// # Safety
// `p` must come from this library and not have been freed.
void mermin_pauli_free(struct MerminPauliSum *p);

// Renders a Pauli sum in the parse grammar.
//
// # Safety
// `p` must be a live handle; `out` must be writable.
enum MerminStatus mermin_pauli_to_string(const struct MerminPauliSum *p, char **out);

// `out = a + b`.
//
// # Safety
// `a`, `b` must be live handles; `out` must be writable.
enum MerminStatus mermin_pauli_add(const struct MerminPauliSum *a,
                                   const struct MerminPauliSum *b,
                                   struct MerminPauliSum **out);

// `out = a · b`.
//
// # Safety
// `a`, `b` must be live handles; `out` must be writable.
enum MerminStatus mermin_pauli_mul(const struct MerminPauliSum *a,
                                   const struct MerminPauliSum *b,
                                   struct MerminPauliSum **out);

// Writes whether `a` and `b` commute.
//
// # Safety
// `a`, `b` must be live handles; `out` must be writable.
enum MerminStatus mermin_pauli_commutes(const struct MerminPauliSum *a,
                                        const struct MerminPauliSum *b,
                                        bool *out);

// `out = p v` as a new state.
//
// # Safety
// `p`, `v` must be live handles; `out` must be writable.
enum MerminStatus mermin_pauli_apply(const struct MerminPauliSum *p,
                                     const struct MerminState *v,
                                     struct MerminState **out);

// Mermin expectation `μ_n(v)`. `x` and `y` hold `3n` direction components,
// qubit by qubit.
//
// # Safety
// `v` must be a live handle; `x`, `y` must hold `3n` values; `out` must be writable.
enum MerminStatus mermin_expectation(const struct MerminState *v,
                                     const double *x,
                                     const double *y,
                                     double *out);

// Maximizes `|μ_n(v)|`. Writes the value and, when `x_out`/`y_out` are
// non-NULL, the `3n` components of the achieving directions. `starts = 0`
// selects the default start count.
//
// # Safety
// `v` must be a live handle; `value_out` must be writable; non-NULL
// direction buffers must hold `3n` values.
enum MerminStatus mermin_maximize(const struct MerminState *v,
                                  enum MerminMode mode,
                                  uint64_t seed,
                                  uint32_t starts,
                                  double *value_out,
                                  double *x_out,
                                  double *y_out);

// Default seed used by [`mermin_maximize`] callers that want the reference runs.
uint64_t mermin_default_seed(void);

// Solves a built-in instructional-set device (`u3`, `u4-2`, `tv41`, ...).
//
// # Safety
// `id` must be NUL-terminated; `explainable` and `count` must be writable.
enum MerminStatus mermin_device_verdict(const char *id, bool *explainable, uint64_t *count);

// Eigenoperator basis of a state as JSON `{"operators": [...], "eigenvalues": [...]}`.
//
// # Safety
// `v` must be a live handle; `out` must be writable.
enum MerminStatus mermin_eigen_basis_json(const struct MerminState *v, char **out);

// Runs the identity suite. Returns `VerificationFailed` if any check fails;
// the JSON report is written to `report_out` when non-NULL either way.
//
// # Safety
// `report_out` must be NULL or writable.
enum MerminStatus mermin_verify_identities(char **report_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MERMIN_H */
