#ifndef DEBATENET_H
#define DEBATENET_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define DN_API __declspec(dllexport)
#else
#define DN_API __attribute__((visibility("default")))
#endif

/* Status codes double as CLI exit codes. */
typedef enum dn_status {
  DN_OK = 0,
  DN_ERR_CONFIG = 2,
  DN_ERR_DATA = 3,
  DN_ERR_INTERNAL = 4,
  DN_ERR_ARGUMENT = 5,
  DN_ERR_BUFFER = 6 /* output buffer too small; *needed holds the required size */
} dn_status;

typedef struct dn_config dn_config;
typedef struct dn_corpus dn_corpus;

/* Message of the last failure on the calling thread; never NULL. */
DN_API const char* dn_last_error(void);
DN_API const char* dn_version(void);

/* String outputs: the text plus a NUL is copied into buf when cap is large
   enough. needed (optional) receives the full size including the NUL.
   buf == NULL with cap == 0 only queries the size and returns DN_OK. */

DN_API dn_status dn_config_new(dn_config** out);
DN_API dn_status dn_config_load(const char* path, dn_config** out);
DN_API dn_status dn_config_set(dn_config* cfg, const char* key, const char* value);
DN_API dn_status dn_config_get(const dn_config* cfg, const char* key, char* buf, size_t cap, size_t* needed);
DN_API dn_status dn_config_hash(const dn_config* cfg, const char* stage, char* buf, size_t cap, size_t* needed);
DN_API void dn_config_free(dn_config* cfg);

/* Stage names: synth, ingest, stats, pairs, features, train, importance, did, report. */
DN_API dn_status dn_run_stage(const dn_config* cfg, const char* stage, char* summary, size_t cap, size_t* needed);

DN_API dn_status dn_corpus_load(const char* path, dn_corpus** out);
DN_API size_t dn_corpus_discussion_count(const dn_corpus* corpus);
DN_API size_t dn_corpus_comment_count(const dn_corpus* corpus);
/* Summary statistics as JSON; cfg may be NULL for the default award rules. */
DN_API dn_status dn_corpus_stats_json(const dn_corpus* corpus, const dn_config* cfg, char* buf, size_t cap,
                                      size_t* needed);
DN_API void dn_corpus_free(dn_corpus* corpus);

/* Numeric kernels over plain arrays. Graph nodes are 0..n_nodes-1 and edges
   are (from[i], to[i], weight[i]); repeated edges add their weights. */
DN_API dn_status dn_auc(const double* scores, const int* labels, size_t n, double* out);
DN_API dn_status dn_betweenness(size_t n_nodes, const size_t* from, const size_t* to, const double* weight,
                                size_t n_edges, int inverse_weight, double* out);
DN_API dn_status dn_hits(size_t n_nodes, const size_t* from, const size_t* to, const double* weight,
                         size_t n_edges, double tol, int max_iter, double* authority, double* hub);

typedef struct dn_did_result {
  double beta[4]; /* intercept, T, G, T*G */
  double se[4];
  double t_stats[4];
  double p_values[4];
  size_t n_obs;
} dn_did_result;

/* Balanced 2x2 panel: every pair index needs one row per (g, t) cell.
   cluster_by_pair selects pair-clustered standard errors. */
DN_API dn_status dn_did(const double* y, const int* g, const int* t, const size_t* pair, size_t n,
                        int cluster_by_pair, dn_did_result* out);

#ifdef __cplusplus
}
#endif

#endif
