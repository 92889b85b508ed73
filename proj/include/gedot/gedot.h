/* gedot: approximate graph edit distance and edit paths via optimal transport.
 *
 * Every function returns a gedot_status. On failure the message is available
 * from gedot_last_error() on the calling thread until the next call. Strings
 * returned through char** out-parameters are owned by the caller and must be
 * released with gedot_string_free().
 *
 * Datasets are immutable once created and may be read from several threads at
 * once. Options and evaluators must not be shared across threads without
 * external locking.
 */
#ifndef GEDOT_GEDOT_H
#define GEDOT_GEDOT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(GEDOT_BUILDING_LIBRARY)
#    define GEDOT_API __declspec(dllexport)
#  else
#    define GEDOT_API __declspec(dllimport)
#  endif
#else
#  define GEDOT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gedot_status {
  GEDOT_OK = 0,
  GEDOT_ERR_INVALID_ARGUMENT = 1,
  GEDOT_ERR_VALIDATION = 2,
  GEDOT_ERR_INFEASIBLE = 3,
  GEDOT_ERR_NUMERICAL = 4,
  GEDOT_ERR_TOO_LARGE = 5,
  GEDOT_ERR_IO = 6,
  GEDOT_ERR_PARSE = 7,
  GEDOT_ERR_OUT_OF_MEMORY = 8,
  GEDOT_ERR_INTERNAL = 9
} gedot_status;

GEDOT_API const char* gedot_version(void);
GEDOT_API const char* gedot_status_name(gedot_status status);
GEDOT_API const char* gedot_last_error(void);
GEDOT_API void gedot_string_free(char* s);

/* ---- solver options ---------------------------------------------------- */

typedef struct gedot_options gedot_options;

GEDOT_API gedot_status gedot_options_create(gedot_options** out);
GEDOT_API void gedot_options_destroy(gedot_options* opts);
/* "gedgw", "handcrafted-ot" or "ensemble" (default). */
GEDOT_API gedot_status gedot_options_set_method(gedot_options* opts, const char* method);
GEDOT_API gedot_status gedot_options_set_epsilon(gedot_options* opts, double epsilon);
GEDOT_API gedot_status gedot_options_set_sinkhorn_iters(gedot_options* opts, int iters);
GEDOT_API gedot_status gedot_options_set_sinkhorn_tol(gedot_options* opts, double tol);
GEDOT_API gedot_status gedot_options_set_stabilized(gedot_options* opts, int enabled);
GEDOT_API gedot_status gedot_options_set_cg_iters(gedot_options* opts, int iters);
GEDOT_API gedot_status gedot_options_set_cg_tol(gedot_options* opts, double tol);
GEDOT_API gedot_status gedot_options_set_k(gedot_options* opts, int k);
GEDOT_API gedot_status gedot_options_set_pruning(gedot_options* opts, int enabled);

/* ---- datasets (JSON lines of graph pairs) ------------------------------ */

typedef struct gedot_dataset gedot_dataset;

GEDOT_API gedot_status gedot_dataset_load(const char* path, gedot_dataset** out);
/* Parses JSON-lines text held in memory. */
GEDOT_API gedot_status gedot_dataset_parse(const char* text, gedot_dataset** out);
GEDOT_API void gedot_dataset_destroy(gedot_dataset* ds);
GEDOT_API size_t gedot_dataset_size(const gedot_dataset* ds);
GEDOT_API gedot_status gedot_dataset_line(const gedot_dataset* ds, size_t index, char** out);
GEDOT_API gedot_status gedot_dataset_save(const gedot_dataset* ds, const char* path);

typedef struct gedot_synth_config {
  size_t count;           /* pairs to generate */
  size_t pairs_per_query; /* pairs sharing one base graph and query_id */
  size_t nodes_min;
  size_t nodes_max;
  double edge_prob;
  int delta_min;
  int delta_max;
  const char* labels;     /* comma separated; NULL or "" for unlabeled */
  uint64_t seed;
} gedot_synth_config;

/* Fills cfg with defaults: 100 pairs, 10 per query, 3-7 nodes, p = 0.3,
 * delta 1-4, labels "C,N,O", seed 0. */
GEDOT_API void gedot_synth_config_init(gedot_synth_config* cfg);
GEDOT_API gedot_status gedot_synth_dataset(const gedot_synth_config* cfg, gedot_dataset** out);

/* ---- per-pair computation ---------------------------------------------- */

enum {
  GEDOT_WITH_PATH = 1,   /* include matching and edit path in the result */
  GEDOT_WITH_TIMING = 2  /* include elapsed_millis (makes output run dependent) */
};

/* One results line (JSON, no trailing newline) for pair `index`. When the
 * solver fails the status is returned and *out still receives a line that
 * carries an "error" field, so batch callers can keep going. */
GEDOT_API gedot_status gedot_compute(const gedot_dataset* ds, size_t index,
                                     const gedot_options* opts, int flags, char** out);

enum {
  GEDOT_EXACT_RESULT = 0,  /* results line with method "exact" */
  GEDOT_EXACT_ANNOTATE = 1 /* dataset line with exact ged and optimal mappings */
};

GEDOT_API gedot_status gedot_exact(const gedot_dataset* ds, size_t index, size_t max_nodes,
                                   int mode, char** out);
GEDOT_API gedot_status gedot_lower_bound(const gedot_dataset* ds, size_t index, long long* out);

/* ---- evaluation --------------------------------------------------------- */

typedef struct gedot_evaluator gedot_evaluator;

/* Ground truth comes from `truth`, which must outlive the evaluator. */
GEDOT_API gedot_status gedot_evaluator_create(const gedot_dataset* truth, gedot_evaluator** out);
GEDOT_API void gedot_evaluator_destroy(gedot_evaluator* ev);
/* Adds one results line, matched to the dataset by pair_index. Lines with an
 * "error" field and pairs without ground truth are counted but not scored. */
GEDOT_API gedot_status gedot_evaluator_add(gedot_evaluator* ev, const char* result_line);
GEDOT_API gedot_status gedot_evaluator_report_json(const gedot_evaluator* ev, char** out);
GEDOT_API gedot_status gedot_evaluator_report_table(const gedot_evaluator* ev, char** out);

#ifdef __cplusplus
}
#endif

#endif /* GEDOT_GEDOT_H */
