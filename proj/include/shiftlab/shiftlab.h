/* shiftlab: exact horizon-bounded computations for weighted backward
 * shifts and combinatorial families of integer sets.
 *
 * C API conventions:
 *   - every function returns a slab_status; SLAB_OK means success;
 *   - on failure, slab_last_error() returns a thread-local message;
 *   - objects are opaque handles released with their _free function;
 *   - structured results come back as JSON in a malloc'd string the
 *     caller releases with slab_string_free.
 */
#ifndef SHIFTLAB_H
#define SHIFTLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SLAB_API __declspec(dllexport)
#else
#define SLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum slab_status {
    SLAB_OK = 0,
    SLAB_ERR_INVALID_ARGUMENT = 1,
    SLAB_ERR_PARSE = 2,
    SLAB_ERR_RANGE = 3,
    SLAB_ERR_UNKNOWN_NAME = 4,
    SLAB_ERR_VALIDATION = 5,
    SLAB_ERR_IO = 6,
    SLAB_ERR_INTERNAL = 7
} slab_status;

typedef struct slab_intset slab_intset;
typedef struct slab_weight slab_weight;

SLAB_API const char* slab_version(void);

/* Thread-local message describing the most recent failure. */
SLAB_API const char* slab_last_error(void);

SLAB_API void slab_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Integer sets                                                        */

/* Catalog names: thick_powers2, grid(n), grid_union, fs_tens,
 * complement_fs_tens, complement_powers2, salas_fs, salas_diff. */
SLAB_API slab_status slab_intset_catalog(const char* name, slab_intset** out);

/* Parses a set description (one `name = rule` per line; see README for
 * the grammar) and selects `name`, or the last definition when name is
 * NULL or empty. */
SLAB_API slab_status slab_intset_parse(const char* text, const char* name, slab_intset** out);

/* JSON {name, horizon, elements[]}. */
SLAB_API slab_status slab_intset_materialize(const slab_intset* set, int64_t horizon, char** json_out);

SLAB_API void slab_intset_free(slab_intset* set);

/* Family predicate verdict as JSON {query, params, horizon, status,
 * certainty, witness}. Predicates: thick:k=, syndetic:b=, thickly:k=,b=,
 * piecewise:k=,b=, ip:depth=, nonempty, cofinite, density_at_least:r=,
 * lower_banach_at_least:L=,r=. */
SLAB_API slab_status slab_family_check(const slab_intset* set, const char* predicate, int64_t horizon,
                                       char** json_out);

/* Exact counts, horizon density, and sliding-window extremes. */
SLAB_API slab_status slab_density_stats(const slab_intset* set, int64_t horizon, const int64_t* window_lengths,
                                        size_t window_count, int64_t range_lo, int64_t range_hi, char** json_out);

/* Dual-family refutation attempt of `set` against a known family member. */
SLAB_API slab_status slab_dual_refutation(const slab_intset* set, const slab_intset* member, int64_t horizon,
                                          char** json_out);

/* For k = 0..k_max, shrinks the set to {n : [n-k, n+k] inside it} and
 * applies the inner predicate; witnessed only if every k passes. */
SLAB_API slab_status slab_tilde_check(const slab_intset* set, int64_t k_max, const char* inner_predicate,
                                      int64_t horizon, char** json_out);

/* ------------------------------------------------------------------ */
/* Weight sequences                                                    */

/* Constructors (params as JSON):
 *   example1        {"depth": 8}
 *   example2        {"depth": 8}
 *   case-a          {"L": 0, "horizon": 10000}
 *   wag             {"set": "thick_powers2", "horizon": 10000, "side": "bi"|"uni"}
 *   adjoint         {"set": "thick_powers2", "horizon": 10000}  (use slab_weight_adjoint_pair)
 *   k-chain         {"k": 3, "depth": 6, "experimental": true}
 * layout_json_out (optional) receives the block layout. */
SLAB_API slab_status slab_weight_construct(const char* name, const char* params_json, slab_weight** out,
                                           char** layout_json_out);

/* Both weights of the adjoint construction. */
SLAB_API slab_status slab_weight_adjoint_pair(const char* set_name, int64_t horizon, slab_weight** w_out,
                                              slab_weight** v_out, char** layout_json_out);

/* Weight file format: `side=uni|bi repr=dyadic|rational`, then `index
 * value` lines. */
SLAB_API slab_status slab_weight_from_string(const char* text, slab_weight** out);
SLAB_API slab_status slab_weight_to_string(const slab_weight* w, char** text_out);
SLAB_API void slab_weight_free(slab_weight* w);

/* Cumulative product table over [lo, hi] as JSON. */
SLAB_API slab_status slab_products(const slab_weight* w, int64_t lo, int64_t hi, char** json_out);

/* ------------------------------------------------------------------ */
/* Dynamics checks (JSON results)                                      */

/* Joint e_0-ball return times of (+) B_{w_i}^{p_i}. space: "c0" or
 * "lp:<p>"; rho: rational string in (0,1). */
SLAB_API slab_status slab_return_times(const slab_weight* const* weights, const int64_t* powers, size_t count,
                                       const char* space, const char* rho, int64_t horizon, char** json_out);

/* General-center c0 return times; a and b are JSON arrays of
 * [index, "rational"] pairs. */
SLAB_API slab_status slab_return_times_general(const slab_weight* w, const char* a_json, const char* b_json,
                                               const char* delta, int64_t horizon, char** json_out);

/* A_{M,j} and Abar_{M,j} within [1, horizon]. */
SLAB_API slab_status slab_bes_check(const slab_weight* w, const char* M, int64_t j, int64_t horizon, char** json_out);

/* E-set inclusion check for a weight built from `set` by the wag
 * constructor. */
SLAB_API slab_status slab_wag_check(const slab_intset* set, const char* M, int64_t j, int64_t horizon,
                                    char** json_out);

SLAB_API slab_status slab_salas_unilateral(const slab_weight* w, const slab_weight* v, int64_t horizon,
                                           int ladder_depth, char** json_out);

SLAB_API slab_status slab_salas_bilateral(const slab_weight* w, const slab_weight* v, const char* eps, int64_t q,
                                          int64_t horizon, char** json_out);

/* C-set intersection of the conjugate basis norms of the given weights,
 * then the family predicate applied to it. */
SLAB_API slab_status slab_joint_norms(const slab_weight* const* weights, size_t count, const char* eps,
                                      int64_t window, const char* predicate, int64_t horizon, char** json_out);

/* Strictly increasing n_r with eps_r = 1/r and window r, r = 1..R (the
 * diagonal extraction behind the weak-disjointness sequence). */
SLAB_API slab_status slab_extract_sequence(const slab_weight* const* weights, size_t count, int64_t R,
                                           int64_t horizon, char** json_out);

/* ------------------------------------------------------------------ */
/* Claim-verification suite                                            */

/* config_json keys (all optional): horizon, rho, ladder_depth, seed,
 * jobs, timings. Returns the full report; "ok" is true iff every check
 * passed. */
SLAB_API slab_status slab_verify_paper(const char* config_json, char** json_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SHIFTLAB_H */
