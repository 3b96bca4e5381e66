#ifndef GROWTHLAB_H
#define GROWTHLAB_H

/* auto-generated by cbindgen from growthlab-capi; do not edit */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes of every C-ABI call.
 */
typedef enum {
  GROWTHLAB_STATUS_OK = 0,
  GROWTHLAB_STATUS_NULL_POINTER = 1,
  GROWTHLAB_STATUS_INVALID_UTF8 = 2,
  GROWTHLAB_STATUS_PARSE_ERROR = 3,
  GROWTHLAB_STATUS_FIELD_MISMATCH = 4,
  GROWTHLAB_STATUS_DIVISION_BY_ZERO = 5,
  GROWTHLAB_STATUS_EMPTY_INPUT = 6,
  GROWTHLAB_STATUS_PRECONDITION = 7,
  GROWTHLAB_STATUS_BUDGET_EXCEEDED = 8,
  GROWTHLAB_STATUS_OVERFLOW = 9,
  GROWTHLAB_STATUS_INTERNAL_ERROR = 10,
} GrowthlabStatus;

/**
 * Pairwise set operations, mirroring the library's `SetOp`.
 */
typedef enum {
  GROWTHLAB_OP_SUM = 0,
  GROWTHLAB_OP_DIFF = 1,
  GROWTHLAB_OP_PROD = 2,
  GROWTHLAB_OP_RATIO = 3,
} GrowthlabOp;

/**
 * Energy kinds, mirroring `EnergyKind`.
 */
typedef enum {
  GROWTHLAB_ENERGY_ADDITIVE = 0,
  GROWTHLAB_ENERGY_MULTIPLICATIVE = 1,
} GrowthlabEnergy;

/**
 * Opaque handle to a finite set over one of the exact fields.
 */
typedef struct GrowthlabSet GrowthlabSet;

/**
 * Parse a set literal such as `Fp(101){1,2,3}` into a new handle.
 *
 * # Safety
 * `literal` must be a valid NUL-terminated string and `out` a valid
 * pointer; the returned handle must be freed with `growthlab_set_free`.
 */
GrowthlabStatus growthlab_set_parse(const char *literal, GrowthlabSet **out);

/**
 * Release a set handle. Null is a no-op.
 *
 * # Safety
 * `ptr` must be null or a handle previously returned by this library and
 * not yet freed.
 */
void growthlab_set_free(GrowthlabSet *ptr);

/**
 * Number of elements.
 *
 * # Safety
 * `ptr` must be a live handle; `out` a valid pointer.
 */
GrowthlabStatus growthlab_set_len(const GrowthlabSet *ptr, uintptr_t *out);

/**
 * Render the canonical set literal. Free the result with
 * `growthlab_string_free`.
 *
 * # Safety
 * `ptr` must be a live handle; `out` a valid pointer.
 */
GrowthlabStatus growthlab_set_format(const GrowthlabSet *ptr, char **out);

/**
 * Release a string returned by this library. Null is a no-op.
 *
 * # Safety
 * `ptr` must be null or a string previously returned by this library.
 */
void growthlab_string_free(char *ptr);

/**
 * The pairwise image set A op B as a new handle.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` a valid pointer.
 */
GrowthlabStatus growthlab_pairwise(const GrowthlabSet *a,
                                   const GrowthlabSet *b,
                                   GrowthlabOp op,
                                   GrowthlabSet **out);

/**
 * The iterated sumset kA.
 *
 * # Safety
 * `a` must be a live handle; `out` a valid pointer.
 */
GrowthlabStatus growthlab_iterated_sumset(const GrowthlabSet *a, uint32_t k, GrowthlabSet **out);

/**
 * Exact additive or multiplicative energy E(A,B). Counts above 2^64−1
 * report `Overflow`.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` a valid pointer.
 */
GrowthlabStatus growthlab_energy(const GrowthlabSet *a,
                                 const GrowthlabSet *b,
                                 GrowthlabEnergy kind,
                                 uint64_t *out);

/**
 * The expander image f(A) = A(A+1).
 *
 * # Safety
 * `a` must be a live handle; `out` a valid pointer.
 */
GrowthlabStatus growthlab_f_image(const GrowthlabSet *a, GrowthlabSet **out);

/**
 * Decide separability of a function-field set; writes 1 or 0.
 *
 * # Safety
 * `a` must be a live handle over F_q(t); `out` a valid pointer.
 */
GrowthlabStatus growthlab_is_separable(const GrowthlabSet *a, uint8_t *out);

/**
 * The function-field sum-product certificate as a JSON string.
 *
 * # Safety
 * `a` must be a live handle over F_q(t); `out` a valid pointer; free the
 * string with `growthlab_string_free`.
 */
GrowthlabStatus growthlab_ff_sumproduct_json(const GrowthlabSet *a, char **out);

/**
 * Library version as a static string (do not free).
 */
const char *growthlab_version(void);

#endif  /* GROWTHLAB_H */
