/*
 * patricia_lab C API.
 *
 * Every function returns a pl_status. On failure the message for the calling
 * thread is available from pl_last_error() until the next failing call on
 * that thread. Handles are opaque and owned by the caller; release them with
 * the matching *_free function (passing NULL is allowed).
 *
 * Handles are immutable after creation except pl_tree, which must not be
 * used from two threads at once.
 */
#ifndef PATRICIA_LAB_H
#define PATRICIA_LAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PATRICIA_LAB_BUILDING)
#    define PL_API __declspec(dllexport)
#  else
#    define PL_API __declspec(dllimport)
#  endif
#else
#  define PL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pl_status {
  PL_OK = 0,
  PL_ERR_INVALID_ARGUMENT = 1,
  PL_ERR_PARSE = 2,
  PL_ERR_DEPTH_GUARD = 3,
  PL_ERR_DUPLICATE_STRING = 4,
  PL_ERR_STREAM_FAULT = 5,
  PL_ERR_IO = 6,
  PL_ERR_INTERNAL = 7
} pl_status;

PL_API const char* pl_last_error(void);
PL_API const char* pl_version(void);

/* Functions taking (buf, cap, needed) copy a NUL-terminated string into buf.
 * *needed (optional) receives the full length including the terminator; a
 * buffer that is too small yields PL_ERR_INVALID_ARGUMENT and buf untouched.
 * Pass buf = NULL, cap = 0 to query the size. */

/* ---- distributions ---------------------------------------------------- */

typedef struct pl_dist pl_dist;

/* {"law":"bernoulli","p":0.5}, {"law":"mu_n","N":1000},
 * {"law":"mixture","alpha":{"family":"power","eps":0.5},"a_cap":1048576},
 * {"law":"nu","alpha":{...}} */
PL_API pl_status pl_dist_from_json(const char* json, pl_dist** out);
PL_API void pl_dist_free(pl_dist* dist);
/* Canonical JSON form of the distribution. */
PL_API pl_status pl_dist_to_json(const pl_dist* dist, char* buf, size_t cap, size_t* needed);

/* Exact probability that a string starts with `bits` ("0"/"1" characters). */
PL_API pl_status pl_prefix_probability(const pl_dist* dist, const char* bits, double* out);
/* Fraction of `samples` sampled strings starting with `bits`. */
PL_API pl_status pl_prefix_frequency(const pl_dist* dist, const char* bits, uint64_t samples, uint64_t seed,
                                     double* out);
/* Max over all k-bit prefixes, k <= 24. */
PL_API pl_status pl_max_prefix_probability(const pl_dist* dist, unsigned k, double* out);

/* ---- alpha sequences ---------------------------------------------------- */

/* alpha is an alpha JSON record, e.g. {"family":"power","eps":0.5}. */
PL_API pl_status pl_alpha_beta(const char* alpha_json, uint64_t n, uint64_t* out);
PL_API pl_status pl_alpha_a_of(const char* alpha_json, uint64_t k, uint64_t* out);

/* ---- closed-form bounds -------------------------------------------------- */

PL_API pl_status pl_bound_chernoff(uint64_t n, uint64_t k, double eps, double* out);
/* *in_regime (optional) is set to 1 when alpha_n >= 8. */
PL_API pl_status pl_bound_okamoto(uint64_t n, double alpha_n, double* out, int* in_regime);
PL_API pl_status pl_bound_devroye(uint64_t n, double t, double* out);
/* *in_regime (optional) is set to 1 when n <= N. */
PL_API pl_status pl_bound_distinct(uint64_t n, uint64_t support_root, double* out, int* in_regime);
PL_API pl_status pl_bound_mixture_floor(uint64_t n, double alpha_n, double* out);

/* ---- trees ------------------------------------------------------------------ */

typedef struct pl_tree pl_tree;

/* Samples n strings of `dist` from `seed` and inserts them into a PATRICIA tree. */
PL_API pl_status pl_tree_sample(const pl_dist* dist, uint32_t n, uint64_t seed, pl_tree** out);
/* Builds a tree over explicit heads ("0"/"1" strings) followed by fair coins. */
PL_API pl_status pl_tree_from_prefixes(const char* const* heads, size_t count, uint64_t seed, pl_tree** out);
PL_API void pl_tree_free(pl_tree* tree);
PL_API uint64_t pl_tree_height(const pl_tree* tree);
PL_API uint64_t pl_tree_leaf_count(const pl_tree* tree);
PL_API uint64_t pl_tree_internal_count(const pl_tree* tree);
PL_API uint64_t pl_tree_distinct_first_one(const pl_tree* tree);
/* Height of the uncompressed trie over the same strings. */
PL_API pl_status pl_tree_trie_height(const pl_tree* tree, uint64_t* out);
/* Number of invariant violations (0 for a well-formed tree). */
PL_API pl_status pl_tree_validate(const pl_tree* tree, size_t* violations);
PL_API pl_status pl_tree_to_json(const pl_tree* tree, char* buf, size_t cap, size_t* needed);

/* ---- experiments -------------------------------------------------------------- */

typedef struct pl_experiment pl_experiment;
typedef struct pl_results pl_results;

typedef struct pl_trial_record {
  uint64_t n;
  uint32_t trial;
  uint64_t height;
  uint64_t distinct_first_one;
  uint64_t prefix_match_count;
  uint64_t max_split_index;
  double elapsed_ms;
} pl_trial_record;

typedef struct pl_summary_row {
  uint64_t n;
  uint32_t trials;
  double mean_height;
  double std_height;
  uint64_t min_height;
  uint64_t max_height;
  double h_over_n;
  double h_over_log2n;
  double h_over_floor; /* NaN when the law has no proven floor */
  double mean_distinct;
  double mean_prefix_matches;
} pl_summary_row;

PL_API pl_status pl_experiment_create(const pl_dist* dist, const uint64_t* n_grid, size_t n_grid_len,
                                      uint32_t trials, uint64_t seed, pl_experiment** out);
PL_API void pl_experiment_free(pl_experiment* exp);
/* 0 = hardware concurrency; PATRICIA_LAB_THREADS caps it. */
PL_API pl_status pl_experiment_set_threads(pl_experiment* exp, unsigned threads);
PL_API pl_status pl_experiment_set_max_depth(pl_experiment* exp, uint64_t max_depth);
PL_API pl_status pl_experiment_set_timing(pl_experiment* exp, int record_timing);
PL_API pl_status pl_experiment_run(const pl_experiment* exp, pl_results** out);

PL_API void pl_results_free(pl_results* results);
PL_API size_t pl_results_trial_count(const pl_results* results);
PL_API pl_status pl_results_trial(const pl_results* results, size_t index, pl_trial_record* out);
PL_API size_t pl_results_summary_count(const pl_results* results);
PL_API pl_status pl_results_summary(const pl_results* results, size_t index, pl_summary_row* out);
/* CSV schemas:
 *   trials:  dist,params,n,trial,seed,height,distinct_first_one,prefix_match_count,max_split_index,elapsed_ms
 *   summary: dist,params,n,trials,mean_height,std_height,h_over_n,h_over_log2n,h_over_floor,mean_distinct */
PL_API pl_status pl_results_write_trials_csv(const pl_results* results, const char* path);
PL_API pl_status pl_results_write_summary_csv(const pl_results* results, const char* path);

/* ---- plots and verification ------------------------------------------------------ */

PL_API pl_status pl_plot_svg(const char* csv_path, const char* x_column, const char* y_column, const char* out_path);

typedef void (*pl_criterion_callback)(int id, const char* name, int passed, const char* detail, double seconds,
                                      void* user);

/* Runs the acceptance criteria (criteria == NULL or count == 0 runs all).
 * The callback fires once per criterion as it completes. *all_passed is set
 * to 1 iff every criterion that ran passed. */
PL_API pl_status pl_verify_run(const int* criteria, size_t count, unsigned threads, pl_criterion_callback callback,
                               void* user, int* all_passed);

#ifdef __cplusplus
}
#endif

#endif /* PATRICIA_LAB_H */
