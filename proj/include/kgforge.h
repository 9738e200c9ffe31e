/* kgforge C API: knowledge-graph expansion, embedding training, filtered
 * ranking evaluation and network analytics behind opaque handles.
 *
 * Every fallible call returns a kgf_status (or NULL for constructors); the
 * thread-local message from kgf_last_error() describes the most recent
 * failure on the calling thread. Strings returned through char** out
 * parameters are heap-allocated and must be released with kgf_string_free().
 *
 * Graph mutations (add_entity/add_relation/add_edge/expand) are serialized
 * by a per-handle writer lock; expansion holds it for its whole run. Reads
 * take no lock and may run concurrently between mutations. Other handle
 * kinds are plain values: serialize their mutations yourself.
 */

#ifndef KGFORGE_H
#define KGFORGE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define KGF_API __declspec(dllexport)
#elif defined(__GNUC__) || defined(__clang__)
#define KGF_API __attribute__((visibility("default")))
#else
#define KGF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kgf_status {
    KGF_OK = 0,
    KGF_ERR_INVALID = 1,        /* invalid input or configuration */
    KGF_ERR_NOT_FOUND = 2,      /* unknown id or missing element */
    KGF_ERR_PARSE = 3,          /* malformed file or payload */
    KGF_ERR_IO = 4,             /* filesystem failure */
    KGF_ERR_ENDPOINT = 5,       /* HTTP endpoint returned non-2xx */
    KGF_ERR_TRANSPORT = 6,      /* endpoint unreachable after retries */
    KGF_ERR_TRAIN_DIVERGED = 7, /* non-finite training loss */
    KGF_ERR_UNDEFINED = 8,      /* metric undefined for the input */
    KGF_ERR_INTERNAL = 9
} kgf_status;

typedef enum kgf_model_kind {
    KGF_MODEL_TRANSE = 0,
    KGF_MODEL_ROTATE = 1,
    KGF_MODEL_DISTMULT = 2,
    KGF_MODEL_COMPLEX = 3
} kgf_model_kind;

typedef enum kgf_norm { KGF_NORM_L1 = 0, KGF_NORM_L2 = 1 } kgf_norm;

typedef enum kgf_conflict_policy {
    KGF_CONFLICT_REJECT = 0,
    KGF_CONFLICT_FLAG = 1
} kgf_conflict_policy;

typedef struct kgf_graph kgf_graph;
typedef struct kgf_batch kgf_batch;
typedef struct kgf_model kgf_model;

KGF_API const char* kgf_version(void);

/* Message for the most recent failed call on this thread ("" if none). */
KGF_API const char* kgf_last_error(void);

/* Status of the most recent call on this thread (KGF_OK after success);
 * how handle constructors report why they returned NULL. */
KGF_API kgf_status kgf_last_status(void);

KGF_API void kgf_string_free(char* s);

/* ---- knowledge graph ---------------------------------------------------- */

KGF_API kgf_graph* kgf_graph_new(void);
KGF_API void kgf_graph_free(kgf_graph* graph);

/* TSV triple format: head<TAB>relation<TAB>tail[<TAB>confidence]. */
KGF_API kgf_graph* kgf_graph_load_tsv(const char* path);
KGF_API kgf_status kgf_graph_save_tsv(const kgf_graph* graph, const char* path);
KGF_API kgf_status kgf_graph_save_tsv_string(const kgf_graph* graph, char** out_tsv);

KGF_API kgf_status kgf_graph_add_entity(kgf_graph* graph, const char* label,
                                        const char* entity_type, int64_t* out_id);
KGF_API kgf_status kgf_graph_add_relation(kgf_graph* graph, const char* name,
                                          const char* exclusivity_class, int64_t* out_id);
KGF_API kgf_status kgf_graph_add_edge(kgf_graph* graph, int64_t head, int64_t relation,
                                      int64_t tail, double confidence, const char* provenance,
                                      int64_t* out_id);

/* 1 when present, 0 when absent or on invalid ids. */
KGF_API int kgf_graph_has_edge(const kgf_graph* graph, int64_t head, int64_t relation,
                               int64_t tail);

KGF_API kgf_status kgf_graph_find_entity(const kgf_graph* graph, const char* label,
                                         int64_t* out_id);
KGF_API kgf_status kgf_graph_find_relation(const kgf_graph* graph, const char* name,
                                           int64_t* out_id);

KGF_API kgf_status kgf_graph_counts(const kgf_graph* graph, uint64_t* entities, uint64_t* edges,
                                    uint64_t* entity_types, uint64_t* relation_types);

/* Full index-consistency pass; KGF_ERR_INTERNAL on any mismatch. */
KGF_API kgf_status kgf_graph_audit(const kgf_graph* graph);

/* ---- candidate sources -------------------------------------------------- */

/* JSONL, one candidate object per line. Per-line semantic rejections are
 * returned via out_rejects_json (a JSON array, may be NULL when not wanted);
 * malformed lines fail the whole parse. */
KGF_API kgf_batch* kgf_batch_parse_string(const char* jsonl, char** out_rejects_json);
KGF_API kgf_batch* kgf_batch_parse_file(const char* path, char** out_rejects_json);

/* law: "uniform" or "two_point" (p_low/p_high/mix apply to the latter). */
KGF_API kgf_batch* kgf_batch_synthesize(uint64_t seed, uint64_t n_entities,
                                        uint64_t n_candidates, const char* law, double p_low,
                                        double p_high, double mix);

/* POSTs {"documents": [...]} and parses the JSONL response. Bearer token is
 * read from the KGFORGE_EXTRACTOR_TOKEN environment variable when set. */
KGF_API kgf_batch* kgf_batch_fetch(const char* endpoint_url, const char* const* documents,
                                   size_t n_documents, int32_t timeout_ms, int32_t max_attempts,
                                   char** out_rejects_json);

KGF_API size_t kgf_batch_size(const kgf_batch* batch);
KGF_API kgf_status kgf_batch_serialize(const kgf_batch* batch, char** out_jsonl);
KGF_API void kgf_batch_free(kgf_batch* batch);

/* ---- expansion ----------------------------------------------------------- */

/* Integrates the batch into the graph under confidence threshold tau.
 * exclusivity_pairs declares mutually exclusive relation pairs as
 * comma-separated `a|b` entries (NULL or "" for none). Either report output
 * may be NULL. */
KGF_API kgf_status kgf_expand(kgf_graph* graph, const kgf_batch* batch, double tau,
                              kgf_conflict_policy policy, const char* exclusivity_pairs,
                              char** out_report_json, char** out_report_text);

KGF_API kgf_status kgf_vertex_growth(uint64_t before, uint64_t after, double* out);
KGF_API kgf_status kgf_edge_growth(uint64_t before, uint64_t after, double* out);
KGF_API kgf_status kgf_conflict_rate(uint64_t conflicts, uint64_t new_edges, double* out);
KGF_API kgf_status kgf_bayesian_link_probability(double p, double* out);

/* ---- embedding models ---------------------------------------------------- */

typedef struct kgf_train_config {
    uint64_t epochs;
    uint64_t batch_size;
    double learning_rate;
    double margin;
    uint64_t negatives_per_positive;
    double l2_weight;
    uint64_t seed;
    uint64_t threads;
} kgf_train_config;

KGF_API void kgf_train_config_default(kgf_train_config* config);

KGF_API kgf_model* kgf_model_init(kgf_model_kind kind, uint32_t dim, uint64_t n_entities,
                                  uint64_t n_relations, uint64_t seed, kgf_norm norm);
KGF_API void kgf_model_free(kgf_model* model);

KGF_API kgf_status kgf_model_save(const kgf_model* model, const char* path);
KGF_API kgf_model* kgf_model_load(const char* path);
KGF_API kgf_status kgf_model_info(const kgf_model* model, kgf_model_kind* kind, uint32_t* dim,
                                  uint64_t* n_entities, uint64_t* n_relations);

KGF_API kgf_status kgf_model_score(const kgf_model* model, int64_t head, int64_t relation,
                                   int64_t tail, double* out);

/* Trains on every edge of the graph. out_loss_trace, when non-NULL, must
 * hold config->epochs doubles and receives the per-epoch mean loss. */
KGF_API kgf_status kgf_model_train(kgf_model* model, const kgf_graph* graph,
                                   const kgf_train_config* config, double* out_loss_trace);

KGF_API kgf_status kgf_gradient_check(kgf_model_kind kind, uint32_t dim, uint64_t seed,
                                      double* out_max_rel_error);

/* ---- evaluation ----------------------------------------------------------- */

typedef struct kgf_ranking_metrics {
    double mr;
    double mrr;
    double p_at_1;
    double p_at_3;
    double p_at_10;
    uint64_t n_queries;
    uint64_t skipped_queries;
} kgf_ranking_metrics;

/* Filtered ranking over the test split: candidates forming triples known
 * from train ∪ valid ∪ test are removed. valid_tsv may be NULL. Test triples
 * with entities or relations unseen in the training graph are skipped and
 * counted. */
KGF_API kgf_status kgf_evaluate_files(const kgf_model* model, const kgf_graph* train_graph,
                                      const char* valid_tsv, const char* test_tsv,
                                      uint32_t threads, kgf_ranking_metrics* out);

KGF_API kgf_status kgf_metrics_table_tsv(const kgf_ranking_metrics* metrics, const char* dataset,
                                         const char* model_name, char** out);
KGF_API kgf_status kgf_metrics_table_json(const kgf_ranking_metrics* metrics, const char* dataset,
                                          const char* model_name, char** out);

KGF_API kgf_status kgf_f1(double precision, double recall, double* out);

/* ---- network analytics ---------------------------------------------------- */

typedef struct kgf_network_report {
    uint64_t n_nodes;
    uint64_t n_edges;
    double density;        /* directed: |E| / (|V| (|V| - 1)) */
    double avg_clustering; /* undirected projection */
    uint64_t diameter;     /* 0 when the largest component has < 2 nodes */
    uint64_t lcc_size;
} kgf_network_report;

KGF_API kgf_status kgf_graph_network_report(const kgf_graph* graph, uint32_t threads,
                                            kgf_network_report* out);
KGF_API kgf_status kgf_density(uint64_t n_nodes, uint64_t n_edges, double* out);
KGF_API kgf_status kgf_network_table_tsv(const kgf_network_report* report, const char* name,
                                         char** out);
KGF_API kgf_status kgf_network_table_json(const kgf_network_report* report, const char* name,
                                          char** out);
KGF_API kgf_status kgf_graph_edge_list_tsv(const kgf_graph* graph, char** out);

#ifdef __cplusplus
}
#endif

#endif /* KGFORGE_H */
