#ifndef POWERCHAR_H
#define POWERCHAR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdint.h>
#include <stddef.h>

// Result codes.
typedef enum PcStatus {
  PC_STATUS_OK = 0,
  PC_STATUS_NULL_POINTER = 1,
  PC_STATUS_INVALID_ARGUMENT = 2,
  PC_STATUS_DOMAIN = 3,
  PC_STATUS_OVERFLOW = 4,
  PC_STATUS_CAPACITY = 5,
  PC_STATUS_BUDGET = 6,
  PC_STATUS_PANIC = 7,
} PcStatus;

// Opaque character table.
typedef struct PcCharacterTable PcCharacterTable;

typedef struct PcComplex {
  double re;
  double im;
} PcComplex;

// A sum evaluation. `predictor` and `ratio` are NaN when `y <= 1`.
typedef struct PcSumReport {
  uint32_t order;
  double x;
  double y;
  double total_re;
  double total_im;
  double power_part;
  double remainder_re;
  double remainder_im;
  double predictor;
  double ratio;
  uint64_t moduli_count;
  uint64_t char_count;
} PcSumReport;

// `C1` (order 3) or `C2` (order 4) with its Euler product.
typedef struct PcConstant {
  uint32_t order;
  double value;
  double euler_product;
  uint64_t prime_cutoff;
  double tail_bound;
} PcConstant;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or an empty string.
// The pointer stays valid until the next call into this library on the same thread.
const char *pc_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *pc_version(void);

// Cubic residue symbol `((a + bω)/(na + nb·ω))₃` as an exponent, `-1` for 0.
//
// # Safety
// `out` must be null or point to writable memory for one `int32_t`.
enum PcStatus pc_cubic_symbol(int64_t a, int64_t b, int64_t na, int64_t nb, int32_t *out);

// Quartic residue symbol `((a + bi)/(na + nb·i))₄` as an exponent, `-1` for 0.
//
// # Safety
// `out` must be null or point to writable memory for one `int32_t`.
enum PcStatus pc_quartic_symbol(int64_t a, int64_t b, int64_t na, int64_t nb, int32_t *out);

// Ring Gauss sum `g₃(r, n)` (order 3) or `g₄(r, n)` (order 4) for primary `n`.
//
// # Safety
// `out` must be null or point to writable memory for one `PcComplex`.
enum PcStatus pc_gauss_sum(uint32_t order,
                           int64_t ra,
                           int64_t rb,
                           int64_t na,
                           int64_t nb,
                           struct PcComplex *out);

// Number of characters in the family of modulus `n`.
//
// # Safety
// `out_len` must be null or point to writable memory for one `size_t`.
enum PcStatus pc_family_size(uint32_t order, uint64_t n, size_t *out_len);

// Builds member `index` of the family of modulus `n`. Release with
// [`pc_character_table_free`].
//
// # Safety
// `out` must be null or point to writable memory for one pointer.
enum PcStatus pc_character_table_new(uint32_t order,
                                     uint64_t n,
                                     size_t index,
                                     struct PcCharacterTable **out);

// Releases a table. Null is ignored.
//
// # Safety
// `table` must be null or a handle from [`pc_character_table_new`] not yet freed.
void pc_character_table_free(struct PcCharacterTable *table);

// Modulus of a table.
//
// # Safety
// `table` must be null or a live handle; `out` null or writable.
enum PcStatus pc_character_table_modulus(const struct PcCharacterTable *table, uint64_t *out);

// `χ(m)` as an exponent, `-1` for 0.
//
// # Safety
// `table` must be null or a live handle; `out` null or writable.
enum PcStatus pc_character_table_value(const struct PcCharacterTable *table,
                                       int64_t m,
                                       int32_t *out);

// Classical Gauss sum `τ(r, χ)`.
//
// # Safety
// `table` must be null or a live handle; `out` null or writable.
enum PcStatus pc_tau(const struct PcCharacterTable *table, int64_t r, struct PcComplex *out);

// Evaluates `S(x, y)`. `method`: 0 direct, 1 period. `budget` 0 selects the default.
//
// # Safety
// `out` must be null or point to writable memory for one `PcSumReport`.
enum PcStatus pc_sum_total(uint32_t order,
                           double x,
                           double y,
                           uint32_t method,
                           uint64_t budget,
                           struct PcSumReport *out);

// Computes `C1` or `C2` with primes up to `cutoff` (at least 100).
//
// # Safety
// `out` must be null or point to writable memory for one `PcConstant`.
enum PcStatus pc_compute_constant(uint32_t order, uint64_t cutoff, struct PcConstant *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POWERCHAR_H */
