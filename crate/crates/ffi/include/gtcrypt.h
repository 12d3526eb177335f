#ifndef GTCRYPT_H
#define GTCRYPT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GtObjective {
  GT_OBJECTIVE_AMBIENT = 0,
  GT_OBJECTIVE_INNER = 1,
  GT_OBJECTIVE_PROJECTED = 2,
} GtObjective;

typedef enum GtStatus {
  GT_STATUS_OK = 0,
  GT_STATUS_NULL_POINTER = 1,
  GT_STATUS_INVALID_UTF8 = 2,
  GT_STATUS_INVALID_JSON = 3,
  GT_STATUS_INVALID_INPUT = 4,
  GT_STATUS_NOT_MEMBER = 5,
  GT_STATUS_NO_SOLUTION = 6,
  GT_STATUS_ATTACK_FAILED = 7,
  GT_STATUS_PANIC = 8,
} GtStatus;

// Public key-exchange instance.
typedef struct GtInstance GtInstance;

// Folded subgroup graph with its Nielsen basis.
typedef struct GtSubgroup GtSubgroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until the
// next failing call on the same thread.
const char *gt_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void gt_string_free(char *s);

// Builds the subgroup generated by a JSON array of words.
//
// # Safety
// `gens_json` must be a nul-terminated string; `out` must be writable.
enum GtStatus gt_subgroup_new(const char *gens_json, struct GtSubgroup **out);

// # Safety
// `s` must come from `gt_subgroup_new` and not have been freed. Null is
// ignored.
void gt_subgroup_free(struct GtSubgroup *s);

// # Safety
// `s` must be a live subgroup handle; `out` must be writable.
enum GtStatus gt_subgroup_rank(const struct GtSubgroup *s, size_t *out);

// # Safety
// `s` must be a live subgroup handle; `word` must point to `len` values.
enum GtStatus gt_subgroup_contains(const struct GtSubgroup *s,
                                   const int32_t *word,
                                   size_t len,
                                   bool *out);

// Writes the expression of `word` over the defining generators as JSON
// `[[index, sign], ...]`; `GT_STATUS_NOT_MEMBER` when absent.
//
// # Safety
// `s` must be a live subgroup handle; `word` must point to `len` values.
enum GtStatus gt_subgroup_express(const struct GtSubgroup *s,
                                  const int32_t *word,
                                  size_t len,
                                  char **out_json);

// Writes some `x` with `u^x = v` as a JSON word; `GT_STATUS_NO_SOLUTION`
// when `u` and `v` are not conjugate.
//
// # Safety
// `u` and `v` must point to `u_len` and `v_len` values.
enum GtStatus gt_conj_search(const int32_t *u,
                             size_t u_len,
                             const int32_t *v,
                             size_t v_len,
                             char **out_json);

// Solves `{pairs: [[u, v], ...]}` and writes the solution set as JSON.
//
// # Safety
// `system_json` must be a nul-terminated string.
enum GtStatus gt_scsp_solve(const char *system_json, char **out_json);

// Solves the system inside the subgroup generated by `gens_json` and
// writes the expression; `GT_STATUS_NO_SOLUTION` when there is none.
//
// # Safety
// Both inputs must be nul-terminated strings.
enum GtStatus gt_scsp_star(const char *system_json, const char *gens_json, char **out_json);

// Generates an instance. `params_json` may be null for defaults. The
// private keys are written as JSON `{alice, bob}`.
//
// # Safety
// String inputs must be nul-terminated; out-parameters must be writable.
enum GtStatus gt_keygen(const char *platform_json,
                        const char *params_json,
                        uint64_t seed,
                        struct GtInstance **out_instance,
                        char **out_private_json);

// Parses and validates an instance file.
//
// # Safety
// `json` must be nul-terminated; `out` must be writable.
enum GtStatus gt_instance_from_json(const char *json, struct GtInstance **out);

// # Safety
// `inst` must be a live instance handle.
enum GtStatus gt_instance_to_json(const struct GtInstance *inst, char **out_json);

// # Safety
// `inst` must come from this library and not have been freed. Null is
// ignored.
void gt_instance_free(struct GtInstance *inst);

// The shared key `[a, b]` from the private keys, as a JSON word.
//
// # Safety
// `inst` must be a live handle and `private_json` nul-terminated.
enum GtStatus gt_true_key(const struct GtInstance *inst, const char *private_json, char **out_json);

// Runs the quotient attack; writes the recovered key as a JSON word or
// returns `GT_STATUS_ATTACK_FAILED`.
//
// # Safety
// `inst` must be a live instance handle.
enum GtStatus gt_quotient_attack(const struct GtInstance *inst, char **out_key_json);

// Runs the length-based attack. `max_iters = 0` selects the default cap.
//
// # Safety
// `inst` must be a live instance handle.
enum GtStatus gt_lba_attack(const struct GtInstance *inst,
                            enum GtObjective objective,
                            size_t max_iters,
                            char **out_key_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GTCRYPT_H */
