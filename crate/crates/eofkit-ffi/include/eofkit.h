/* eofkit C API: entanglement of formation for bipartite pure states. */

#ifndef EOFKIT_H
#define EOFKIT_H

/* Generated by cbindgen from eofkit-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Flat status codes mirrored from the library's error type.
typedef enum EofStatus {
  EOF_STATUS_OK = 0,
  EOF_STATUS_NULL_POINTER = 1,
  EOF_STATUS_DIMENSION = 2,
  EOF_STATUS_NON_FINITE = 3,
  EOF_STATUS_NORMALIZATION = 4,
  EOF_STATUS_DEGENERATE_STATE = 5,
  EOF_STATUS_INVALID_SPECTRUM = 6,
  EOF_STATUS_INVALID_UNITARY = 7,
  EOF_STATUS_DEGENERATE_BLOCK = 8,
  EOF_STATUS_INVALID_BASIS = 9,
  EOF_STATUS_INVALID_PLAN = 10,
  EOF_STATUS_UTF8 = 11,
  EOF_STATUS_JSON = 12,
  EOF_STATUS_BUFFER_TOO_SMALL = 13,
  EOF_STATUS_INTERNAL = 14,
} EofStatus;

// Block enumeration range (mirrors the library's mode switch).
typedef enum EofMode {
  // B-side pairs restricted to the first m indices, 1/(m−1)²
  // normalization.
  EOF_MODE_PAPER = 0,
  // All B-side pairs, 1/((m−1)(n−1)) normalization.
  EOF_MODE_RECT = 1,
} EofMode;

// Basis the block sum is evaluated in.
typedef enum EofBasis {
  // Rotate to the Schmidt basis first (certified).
  EOF_BASIS_SCHMIDT = 0,
  // Evaluate coefficients as given (demonstrative only).
  EOF_BASIS_RAW = 1,
} EofBasis;

// Opaque handle to an immutable bipartite pure state.
typedef struct EofState EofState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds a state from `count` complex amplitudes laid out as
// `[re0, im0, re1, im1, ...]` (row-major, side-A index major). On `Ok`
// the new handle is written to `out_state`; release it with
// [`eofkit_state_free`].
//
// # Safety
// `amplitudes` must point to `2 * count` readable doubles and
// `out_state` must be a valid pointer.
enum EofStatus eofkit_state_new(uint32_t m,
                                uint32_t n,
                                const double *amplitudes,
                                size_t count,
                                bool renormalize,
                                struct EofState **out_state);

// Parses a state from the JSON state-file schema
// `{"m": int, "n": int, "amplitudes": [[re, im], ...]}`.
//
// # Safety
// `json` must be a valid NUL-terminated string and `out_state` a valid
// pointer.
enum EofStatus eofkit_state_from_json(const char *json,
                                      bool renormalize,
                                      struct EofState **out_state);

// Serializes the state to the JSON state-file schema. Free the returned
// string with [`eofkit_string_free`].
//
// # Safety
// `state` must be a live handle from this library; `out_json` must be a
// valid pointer.
enum EofStatus eofkit_state_to_json(const struct EofState *state, char **out_json);

// Reports the side dimensions of a state.
//
// # Safety
// All pointers must be valid; `state` must be a live handle.
enum EofStatus eofkit_state_dims(const struct EofState *state, uint32_t *out_m, uint32_t *out_n);

// Releases a state handle. Passing NULL is a no-op.
//
// # Safety
// `state` must have come from this library and not been freed before.
void eofkit_state_free(struct EofState *state);

// Direct EoF in bits (entropy of the Schmidt spectrum).
//
// # Safety
// `state` must be a live handle; `out_bits` must be a valid pointer.
enum EofStatus eofkit_eof_direct(const struct EofState *state, double *out_bits);

// Copies the Schmidt values (nonincreasing, summing to 1) into
// `out_values`. `capacity` is the buffer length in doubles; the number
// written goes to `out_len`. Returns `BufferTooSmall` (with `out_len`
// set to the required length) when the buffer cannot hold all values.
//
// # Safety
// `out_values` must point to `capacity` writable doubles; other
// pointers must be valid.
enum EofStatus eofkit_schmidt_values(const struct EofState *state,
                                     double *out_values,
                                     size_t capacity,
                                     size_t *out_len);

// Block-sum reconstruction of the EoF. Writes the total (bits) and its
// residual against the direct route.
//
// # Safety
// `state` must be a live handle; out pointers must be valid.
enum EofStatus eofkit_reconstruct(const struct EofState *state,
                                  enum EofMode mode,
                                  enum EofBasis basis,
                                  double *out_total,
                                  double *out_residual);

// Full reconstruction report as a JSON string (same schema as the CLI
// emits, without the config block). Free with [`eofkit_string_free`].
//
// # Safety
// `state` must be a live handle; `out_json` must be a valid pointer.
enum EofStatus eofkit_reconstruct_json(const struct EofState *state,
                                       enum EofMode mode,
                                       enum EofBasis basis,
                                       char **out_json);

// Finite-shot estimate of the EoF (Schmidt basis, `shots` per
// observable, deterministic under `seed`). Writes the estimate and its
// propagated standard error.
//
// # Safety
// `state` must be a live handle; out pointers must be valid.
enum EofStatus eofkit_estimate(const struct EofState *state,
                               uint64_t shots,
                               uint64_t seed,
                               enum EofMode mode,
                               double *out_e_hat,
                               double *out_std_error);

// Full estimate report as a JSON string. Free with
// [`eofkit_string_free`].
//
// # Safety
// `state` must be a live handle; `out_json` must be a valid pointer.
enum EofStatus eofkit_estimate_json(const struct EofState *state,
                                    uint64_t shots,
                                    uint64_t seed,
                                    enum EofMode mode,
                                    char **out_json);

// Releases a string returned by this library. Passing NULL is a no-op.
//
// # Safety
// `s` must have been returned by an `eofkit_*` function and not freed
// before.
void eofkit_string_free(char *s);

// Static description of a status code.
const char *eofkit_status_message(enum EofStatus status);

// Library version as a static string.
const char *eofkit_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EOFKIT_H */
