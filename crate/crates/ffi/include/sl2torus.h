#ifndef SL2TORUS_H
#define SL2TORUS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes shared by every entry point.
typedef enum Sl2Status {
  SL2_STATUS_OK = 0,
  SL2_STATUS_INVALID_ARGUMENT = 1,
  SL2_STATUS_UNSUPPORTED_DIMENSION = 2,
  SL2_STATUS_UNSUPPORTED = 3,
  SL2_STATUS_DEGENERATE_MLDE = 4,
  SL2_STATUS_RELATION_VIOLATION = 5,
  SL2_STATUS_REFUSED = 6,
  SL2_STATUS_INTERNAL_INCONSISTENCY = 7,
  SL2_STATUS_NULL_POINTER = 8,
  SL2_STATUS_PANIC = 9,
} Sl2Status;

// Categorical `(S^(p), T^(p))` pair with its relation residuals.
typedef struct Sl2ModularPair Sl2ModularPair;

// Truncated q-expansion with exact rational coefficients.
typedef struct Sl2Series Sl2Series;

// Cyclic generator of a module of vector-valued modular forms.
typedef struct Sl2Vvmf Sl2Vvmf;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failure on this thread, or null if the last call
// succeeded. The caller owns the returned string.
char *sl2_last_error_message(void);

// Library version as a string owned by the caller.
char *sl2_version(void);

// # Safety
// `s` must be null or a string returned by this library, not freed before.
void sl2_string_free(char *s);

// Normalised cyclic generator for `k − λ ∈ {0, 1, 2}` through `order` terms.
//
// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum Sl2Status sl2_cyclic_generator(uint32_t k,
                                    uint32_t lambda,
                                    size_t order,
                                    struct Sl2Vvmf **out);

// # Safety
// `v` must be null or a handle from [`sl2_cyclic_generator`], not freed before.
void sl2_vvmf_free(struct Sl2Vvmf *v);

// # Safety
// `v` must be a live handle and `out` valid for writing.
enum Sl2Status sl2_vvmf_component_count(const struct Sl2Vvmf *v, size_t *out);

// Label `μ` of component `i`.
//
// # Safety
// `v` must be a live handle and `out` valid for writing.
enum Sl2Status sl2_vvmf_component_label(const struct Sl2Vvmf *v, size_t i, uint32_t *out);

// Copy of component `i` as a new series handle.
//
// # Safety
// `v` must be a live handle and `out` valid for writing.
enum Sl2Status sl2_vvmf_component(const struct Sl2Vvmf *v, size_t i, struct Sl2Series **out);

// # Safety
// `v` must be a live handle and `out` valid for writing.
enum Sl2Status sl2_vvmf_to_json(const struct Sl2Vvmf *v, char **out);

// `η^{num/den}` through `order` terms.
//
// # Safety
// `out` must be valid for writing.
enum Sl2Status sl2_series_eta_power(int64_t num, int64_t den, size_t order, struct Sl2Series **out);

// Eisenstein series of even weight, normalised by `−B_w/w!`.
//
// # Safety
// `out` must be valid for writing.
enum Sl2Status sl2_series_eisenstein(uint32_t weight, size_t order, struct Sl2Series **out);

// `J^{-1} = 1728/j`.
//
// # Safety
// `out` must be valid for writing.
enum Sl2Status sl2_series_j_inverse(size_t order, struct Sl2Series **out);

// Product of two series, truncated to the shorter precision.
//
// # Safety
// `a` and `b` must be live handles and `out` valid for writing.
enum Sl2Status sl2_series_mul(const struct Sl2Series *a,
                              const struct Sl2Series *b,
                              struct Sl2Series **out);

// Modular derivative of weight `num/den`.
//
// # Safety
// `s` must be a live handle and `out` valid for writing.
enum Sl2Status sl2_series_modular_derivative(const struct Sl2Series *s,
                                             int64_t num,
                                             int64_t den,
                                             struct Sl2Series **out);

// Number of known coefficients.
//
// # Safety
// `s` must be a live handle and `out` valid for writing.
enum Sl2Status sl2_series_order(const struct Sl2Series *s, size_t *out);

// Leading exponent as a string such as `"3/40"`.
//
// # Safety
// `s` must be a live handle and `out` valid for writing.
enum Sl2Status sl2_series_leading_exponent(const struct Sl2Series *s, char **out);

// Coefficient `n` (of `q^{lead + n}`) as an exact string.
//
// # Safety
// `s` must be a live handle and `out` valid for writing.
enum Sl2Status sl2_series_coeff(const struct Sl2Series *s, size_t n, char **out);

// Coefficient `n` rounded to a double.
//
// # Safety
// `s` must be a live handle and `out` valid for writing.
enum Sl2Status sl2_series_coeff_f64(const struct Sl2Series *s, size_t n, double *out);

// # Safety
// `s` must be a live handle and `out` valid for writing.
enum Sl2Status sl2_series_to_json(const struct Sl2Series *s, char **out);

// # Safety
// `s` must be null or a series handle, not freed before.
void sl2_series_free(struct Sl2Series *s);

// Fusion coefficient `N_{ab}^c`.
//
// # Safety
// `out` must be valid for writing.
enum Sl2Status sl2_fusion_coefficient(uint32_t k,
                                      uint32_t a,
                                      uint32_t b,
                                      uint32_t c,
                                      uint32_t *out);

// Classification report for `ρ_λ` as JSON.
//
// # Safety
// `out` must be valid for writing.
enum Sl2Status sl2_classify_json(uint32_t k, uint32_t lambda, char **out);

// Differential-equation coefficients and residuals as JSON.
//
// # Safety
// `out` must be valid for writing.
enum Sl2Status sl2_mlde_json(uint32_t k, uint32_t lambda, size_t order, char **out);

// Character of `L(k, λ)` through grade `qorder − 1` as JSON.
//
// # Safety
// `out` must be valid for writing.
enum Sl2Status sl2_character_json(uint32_t k, uint32_t lambda, size_t qorder, char **out);

// Categorical pair at level `k` and even label `p`; fails with
// `RelationViolation` when a braid relation residual reaches `tolerance`.
//
// # Safety
// `out` must be valid for writing.
enum Sl2Status sl2_gen_modular_pair(uint32_t k,
                                    uint32_t p,
                                    double tolerance,
                                    struct Sl2ModularPair **out);

// # Safety
// `m` must be a live handle and `out` valid for writing.
enum Sl2Status sl2_pair_dimension(const struct Sl2ModularPair *m, size_t *out);

// Label of basis vector `i`.
//
// # Safety
// `m` must be a live handle and `out` valid for writing.
enum Sl2Status sl2_pair_basis_label(const struct Sl2ModularPair *m, size_t i, uint32_t *out);

// Entry `(i, j)` of `S^(p)`.
//
// # Safety
// `m` must be a live handle; `re` and `im` must be valid for writing.
enum Sl2Status sl2_pair_s_entry(const struct Sl2ModularPair *m,
                                size_t i,
                                size_t j,
                                double *re,
                                double *im);

// Diagonal entry `i` of `T^(p)`.
//
// # Safety
// `m` must be a live handle; `re` and `im` must be valid for writing.
enum Sl2Status sl2_pair_t_entry(const struct Sl2ModularPair *m, size_t i, double *re, double *im);

// `‖(ST)³ − S²‖_∞` and `‖S⁴ − θ_p^{-1}‖_∞`.
//
// # Safety
// `m` must be a live handle; both outputs must be valid for writing.
enum Sl2Status sl2_pair_residuals(const struct Sl2ModularPair *m,
                                  double *st_cubed,
                                  double *s_fourth);

// # Safety
// `m` must be a live handle and `out` valid for writing.
enum Sl2Status sl2_pair_to_json(const struct Sl2ModularPair *m, char **out);

// # Safety
// `m` must be null or a pair handle, not freed before.
void sl2_pair_free(struct Sl2ModularPair *m);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SL2TORUS_H */
