#ifndef CKHOPF_H
#define CKHOPF_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CkAntipodeMethod {
  CK_ANTIPODE_METHOD_RECURSIVE = 0,
  CK_ANTIPODE_METHOD_TAKEUCHI = 1,
} CkAntipodeMethod;

typedef enum CkCoeffMethod {
  CK_COEFF_METHOD_EXTRACT = 0,
  CK_COEFF_METHOD_RECURSION = 1,
  CK_COEFF_METHOD_CLOSED_FORM = 2,
} CkCoeffMethod;

typedef enum CkStatus {
  CK_STATUS_OK = 0,
  CK_STATUS_NULL_POINTER = 1,
  CK_STATUS_INVALID_UTF8 = 2,
  CK_STATUS_PARSE = 3,
  CK_STATUS_INVALID_ARGUMENT = 4,
  CK_STATUS_GUARD = 5,
  CK_STATUS_ARITHMETIC = 6,
  CK_STATUS_PANIC = 7,
} CkStatus;

// The coefficients of `S(δ_n)` in the `δ`-monomials.
typedef struct CkCoeffTable CkCoeffTable;

// An integer combination of forests.
typedef struct CkElement CkElement;

// An element of the tensor square.
typedef struct CkTensor CkTensor;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. The pointer is
// valid until the next call into the library on the same thread.
const char *ck_last_error(void);

// Releases a string returned by the library.
//
// # Safety
// `s` must come from this library and not have been freed, or be null.
void ck_string_free(char *s);

// Library version, a static string.
const char *ck_version(void);

// Parses a forest in bracket notation, or a combination `c1*F1 + c2*F2`.
//
// # Safety
// `text` must be a valid NUL-terminated string; `out` must be writable.
enum CkStatus ck_element_parse(const char *text, struct CkElement **out);

// # Safety
// `x` must come from this library and not have been freed, or be null.
void ck_element_free(struct CkElement *x);

// Text form `c1*F1 + c2*F2 + ...`.
//
// # Safety
// `x` must be a live element; `out` must be writable.
enum CkStatus ck_element_to_string(const struct CkElement *x, char **out);

// JSON list of `{coefficient, forest}` records.
//
// # Safety
// `x` must be a live element; `out` must be writable.
enum CkStatus ck_element_to_json(const struct CkElement *x, char **out);

// Counit as a decimal string.
//
// # Safety
// `x` must be a live element; `out` must be writable.
enum CkStatus ck_counit(const struct CkElement *x, char **out);

// Commutative product.
//
// # Safety
// `a` and `b` must be live elements; `out` must be writable.
enum CkStatus ck_product(const struct CkElement *a,
                         const struct CkElement *b,
                         struct CkElement **out);

// PreLie grafting product `a • b`.
//
// # Safety
// `a` and `b` must be live elements; `out` must be writable.
enum CkStatus ck_prelie(const struct CkElement *a,
                        const struct CkElement *b,
                        struct CkElement **out);

// # Safety
// `a` must be a live element; `out` must be writable; `method` must be one
// of the declared enumerators.
enum CkStatus ck_antipode(const struct CkElement *a,
                          enum CkAntipodeMethod method,
                          struct CkElement **out);

// Grafting operator: a new root below every forest.
//
// # Safety
// `a` must be a live element; `out` must be writable.
enum CkStatus ck_graft(const struct CkElement *a, struct CkElement **out);

// Growth operator `x • []`.
//
// # Safety
// `a` must be a live element; `out` must be writable.
enum CkStatus ck_grow(const struct CkElement *a, struct CkElement **out);

// The generator `δ_n`, `n ≥ 1`.
//
// # Safety
// `out` must be writable.
enum CkStatus ck_delta(uintptr_t n, struct CkElement **out);

// # Safety
// `a` must be a live element; `out` must be writable.
enum CkStatus ck_coproduct(const struct CkElement *a, struct CkTensor **out);

// # Safety
// `t` must come from this library and not have been freed, or be null.
void ck_tensor_free(struct CkTensor *t);

// Text form `c*L⊗R + ...`.
//
// # Safety
// `t` must be a live tensor; `out` must be writable.
enum CkStatus ck_tensor_to_string(const struct CkTensor *t, char **out);

// JSON list of `{coefficient, left, right}` records.
//
// # Safety
// `t` must be a live tensor; `out` must be writable.
enum CkStatus ck_tensor_to_json(const struct CkTensor *t, char **out);

// Number of terms of a tensor; 0 for null.
//
// # Safety
// `t` must be a live tensor or null.
uintptr_t ck_tensor_len(const struct CkTensor *t);

// Coefficient table of `S(δ_n)` computed with the given method.
//
// # Safety
// `out` must be writable; `method` must be one of the declared enumerators.
enum CkStatus ck_coeff_table(uintptr_t n, enum CkCoeffMethod method, struct CkCoeffTable **out);

// # Safety
// `t` must come from this library and not have been freed, or be null.
void ck_coeff_table_free(struct CkCoeffTable *t);

// Number of entries (partitions of n); 0 for null.
//
// # Safety
// `t` must be a live table or null.
uintptr_t ck_coeff_table_len(const struct CkCoeffTable *t);

// `{n, method, entries: [{index, a, b}]}`.
//
// # Safety
// `t` must be a live table; `out` must be writable.
enum CkStatus ck_coeff_table_to_json(const struct CkCoeffTable *t, char **out);

// CSV with columns `index,a,b`.
//
// # Safety
// `t` must be a live table; `out` must be writable.
enum CkStatus ck_coeff_table_to_csv(const struct CkCoeffTable *t, char **out);

// `a_{i_1..i_n}` by the coefficient recursion, as a decimal string.
// The entries must satisfy `Σ k i_k = len`.
//
// # Safety
// `entries` must point to `len` readable values (or be null when `len` is
// 0); `out` must be writable.
enum CkStatus ck_coeff_recursion(const uint32_t *entries, uintptr_t len, char **out);

// The polynomial `P` of the dominant sequence of the tail `(i_2, i_3, ...)`,
// in expanded text form.
//
// # Safety
// `tail` must point to `len` readable values (or be null when `len` is 0);
// `out` must be writable.
enum CkStatus ck_poly_p(const uint32_t *tail, uintptr_t len, char **out);

// `H_n^{(k)}` as an exact rational string.
//
// # Safety
// `out` must be writable.
enum CkStatus ck_harmonic(uintptr_t n, uintptr_t k, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CKHOPF_H */
