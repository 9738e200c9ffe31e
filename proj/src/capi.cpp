#include "kgforge.h"

#include "kgforge/analytics.hpp"
#include "kgforge/candidates.hpp"
#include "kgforge/embedding.hpp"
#include "kgforge/expansion.hpp"
#include "kgforge/graph.hpp"
#include "kgforge/http_source.hpp"
#include "kgforge/ranking.hpp"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <memory>
#include <mutex>

using namespace kgforge;

struct kgf_graph {
    KnowledgeGraph impl;
    std::mutex writer; // serializes mutations; reads are lock-free between them
};

struct kgf_batch {
    ExtractionBatch impl;
};

struct kgf_model {
    EmbeddingModel impl;
};

namespace {

thread_local std::string g_last_error;
thread_local kgf_status g_last_status = KGF_OK;

kgf_status set_error(kgf_status status, std::string message) {
    g_last_status = status;
    g_last_error = std::move(message);
    return status;
}

kgf_status status_of(ErrorCode code) {
    switch (code) {
    case ErrorCode::invalid_input: return KGF_ERR_INVALID;
    case ErrorCode::not_found: return KGF_ERR_NOT_FOUND;
    case ErrorCode::parse: return KGF_ERR_PARSE;
    case ErrorCode::io: return KGF_ERR_IO;
    case ErrorCode::endpoint: return KGF_ERR_ENDPOINT;
    case ErrorCode::transport: return KGF_ERR_TRANSPORT;
    case ErrorCode::training_diverged: return KGF_ERR_TRAIN_DIVERGED;
    case ErrorCode::undefined_metric: return KGF_ERR_UNDEFINED;
    case ErrorCode::internal: return KGF_ERR_INTERNAL;
    }
    return KGF_ERR_INTERNAL;
}

// Runs fn, mapping exceptions onto status codes and the thread-local message.
template <typename Fn>
kgf_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        g_last_status = KGF_OK;
        return KGF_OK;
    } catch (const Error& e) {
        return set_error(status_of(e.code()), e.what());
    } catch (const std::exception& e) {
        return set_error(KGF_ERR_INTERNAL, e.what());
    } catch (...) {
        return set_error(KGF_ERR_INTERNAL, "unknown error");
    }
}

kgf_status require(bool ok, const char* message) {
    if (ok) return KGF_OK;
    return set_error(KGF_ERR_INVALID, message);
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

kgf_status check_handle_id(int64_t id) {
    if (id < 0 || id > int64_t(std::numeric_limits<EntityId>::max())) {
        return set_error(KGF_ERR_NOT_FOUND, "id out of range");
    }
    return KGF_OK;
}

std::string rejects_to_json(const std::vector<RejectedCandidate>& rejects) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rejects) {
        arr.push_back({{"line", r.line_number}, {"reason", r.reason}});
    }
    return arr.dump();
}

RankingMetrics to_core_metrics(const kgf_ranking_metrics& m) {
    RankingMetrics out;
    out.mr = m.mr;
    out.mrr = m.mrr;
    out.p_at[1] = m.p_at_1;
    out.p_at[3] = m.p_at_3;
    out.p_at[10] = m.p_at_10;
    out.n_queries = m.n_queries;
    return out;
}

NetworkReport to_core_report(const kgf_network_report& r) {
    NetworkReport out;
    out.n_nodes = std::size_t(r.n_nodes);
    out.n_edges = std::size_t(r.n_edges);
    out.density = r.density;
    out.avg_clustering = r.avg_clustering;
    out.diameter = std::size_t(r.diameter);
    out.lcc_size = std::size_t(r.lcc_size);
    return out;
}

} // namespace

extern "C" {

const char* kgf_version(void) { return "0.1.0"; }

const char* kgf_last_error(void) { return g_last_error.c_str(); }

kgf_status kgf_last_status(void) { return g_last_status; }

void kgf_string_free(char* s) { std::free(s); }

/* ---- knowledge graph ---------------------------------------------------- */

kgf_graph* kgf_graph_new(void) { return new (std::nothrow) kgf_graph; }

void kgf_graph_free(kgf_graph* graph) { delete graph; }

kgf_graph* kgf_graph_load_tsv(const char* path) {
    if (!path) {
        set_error(KGF_ERR_INVALID, "path is NULL");
        return nullptr;
    }
    kgf_graph* out = nullptr;
    kgf_status st = guarded([&] {
        auto graph = std::make_unique<kgf_graph>();
        graph->impl = load_triples_tsv(path);
        out = graph.release();
    });
    return st == KGF_OK ? out : nullptr;
}

kgf_status kgf_graph_save_tsv(const kgf_graph* graph, const char* path) {
    if (auto st = require(graph && path, "graph/path is NULL"); st != KGF_OK) return st;
    return guarded([&] { save_triples_tsv(graph->impl, path); });
}

kgf_status kgf_graph_save_tsv_string(const kgf_graph* graph, char** out_tsv) {
    if (auto st = require(graph && out_tsv, "graph/out is NULL"); st != KGF_OK) return st;
    return guarded([&] { *out_tsv = copy_string(save_triples_tsv_text(graph->impl)); });
}

kgf_status kgf_graph_add_entity(kgf_graph* graph, const char* label, const char* entity_type,
                                int64_t* out_id) {
    if (auto st = require(graph && label, "graph/label is NULL"); st != KGF_OK) return st;
    return guarded([&] {
        std::lock_guard lock(graph->writer);
        EntityId id = graph->impl.add_entity(label, entity_type ? entity_type : "");
        if (out_id) *out_id = int64_t(id);
    });
}

kgf_status kgf_graph_add_relation(kgf_graph* graph, const char* name,
                                  const char* exclusivity_class, int64_t* out_id) {
    if (auto st = require(graph && name, "graph/name is NULL"); st != KGF_OK) return st;
    return guarded([&] {
        std::lock_guard lock(graph->writer);
        RelationId id = graph->impl.add_relation(name, exclusivity_class ? exclusivity_class : "");
        if (out_id) *out_id = int64_t(id);
    });
}

kgf_status kgf_graph_add_edge(kgf_graph* graph, int64_t head, int64_t relation, int64_t tail,
                              double confidence, const char* provenance, int64_t* out_id) {
    if (auto st = require(graph != nullptr, "graph is NULL"); st != KGF_OK) return st;
    for (int64_t id : {head, relation, tail}) {
        if (auto st = check_handle_id(id); st != KGF_OK) return st;
    }
    return guarded([&] {
        std::lock_guard lock(graph->writer);
        EdgeId id = graph->impl.add_edge(EntityId(head), RelationId(relation), EntityId(tail),
                                         confidence, provenance ? provenance : "");
        if (out_id) *out_id = int64_t(id);
    });
}

int kgf_graph_has_edge(const kgf_graph* graph, int64_t head, int64_t relation, int64_t tail) {
    if (!graph || head < 0 || relation < 0 || tail < 0) return 0;
    return graph->impl.has_edge(EntityId(head), RelationId(relation), EntityId(tail)) ? 1 : 0;
}

kgf_status kgf_graph_find_entity(const kgf_graph* graph, const char* label, int64_t* out_id) {
    if (auto st = require(graph && label && out_id, "graph/label/out is NULL"); st != KGF_OK) {
        return st;
    }
    auto id = graph->impl.find_entity(label);
    if (!id) {
        return set_error(KGF_ERR_NOT_FOUND, "entity not found");
    }
    *out_id = int64_t(*id);
    return KGF_OK;
}

kgf_status kgf_graph_find_relation(const kgf_graph* graph, const char* name, int64_t* out_id) {
    if (auto st = require(graph && name && out_id, "graph/name/out is NULL"); st != KGF_OK) {
        return st;
    }
    auto id = graph->impl.find_relation(name);
    if (!id) {
        return set_error(KGF_ERR_NOT_FOUND, "relation not found");
    }
    *out_id = int64_t(*id);
    return KGF_OK;
}

kgf_status kgf_graph_counts(const kgf_graph* graph, uint64_t* entities, uint64_t* edges,
                            uint64_t* entity_types, uint64_t* relation_types) {
    if (auto st = require(graph != nullptr, "graph is NULL"); st != KGF_OK) return st;
    GraphCounts c = graph->impl.counts();
    if (entities) *entities = c.entities;
    if (edges) *edges = c.edges;
    if (entity_types) *entity_types = c.entity_types;
    if (relation_types) *relation_types = c.relation_types;
    return KGF_OK;
}

kgf_status kgf_graph_audit(const kgf_graph* graph) {
    if (auto st = require(graph != nullptr, "graph is NULL"); st != KGF_OK) return st;
    return guarded([&] { graph->impl.audit(); });
}

/* ---- candidate sources --------------------------------------------------- */

kgf_batch* kgf_batch_parse_string(const char* jsonl, char** out_rejects_json) {
    if (!jsonl) {
        set_error(KGF_ERR_INVALID, "input is NULL");
        return nullptr;
    }
    kgf_batch* out = nullptr;
    kgf_status st = guarded([&] {
        ParsedCandidates parsed = parse_candidates(std::string_view(jsonl));
        if (out_rejects_json) *out_rejects_json = copy_string(rejects_to_json(parsed.rejects));
        out = new kgf_batch{std::move(parsed.batch)};
    });
    return st == KGF_OK ? out : nullptr;
}

kgf_batch* kgf_batch_parse_file(const char* path, char** out_rejects_json) {
    if (!path) {
        set_error(KGF_ERR_INVALID, "path is NULL");
        return nullptr;
    }
    kgf_batch* out = nullptr;
    kgf_status st = guarded([&] {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw Error(ErrorCode::io, std::string("cannot open for reading: ") + path);
        ParsedCandidates parsed = parse_candidates(in);
        if (out_rejects_json) *out_rejects_json = copy_string(rejects_to_json(parsed.rejects));
        out = new kgf_batch{std::move(parsed.batch)};
    });
    return st == KGF_OK ? out : nullptr;
}

kgf_batch* kgf_batch_synthesize(uint64_t seed, uint64_t n_entities, uint64_t n_candidates,
                                const char* law, double p_low, double p_high, double mix) {
    kgf_batch* out = nullptr;
    kgf_status st = guarded([&] {
        SyntheticSpec spec;
        spec.seed = seed;
        spec.n_entities = std::size_t(n_entities);
        spec.n_candidates = std::size_t(n_candidates);
        spec.p_low = p_low;
        spec.p_high = p_high;
        spec.mix = mix;
        std::string law_name = law ? law : "uniform";
        if (law_name == "uniform") {
            spec.law = ConfidenceLaw::uniform;
        } else if (law_name == "two_point") {
            spec.law = ConfidenceLaw::two_point;
        } else {
            throw Error(ErrorCode::invalid_input, "unknown confidence law: " + law_name);
        }
        out = new kgf_batch{synthesize_candidates(spec)};
    });
    return st == KGF_OK ? out : nullptr;
}

kgf_batch* kgf_batch_fetch(const char* endpoint_url, const char* const* documents,
                           size_t n_documents, int32_t timeout_ms, int32_t max_attempts,
                           char** out_rejects_json) {
    if (!endpoint_url || (n_documents > 0 && !documents)) {
        set_error(KGF_ERR_INVALID, "endpoint/documents is NULL");
        return nullptr;
    }
    kgf_batch* out = nullptr;
    kgf_status st = guarded([&] {
        std::vector<std::string> docs(documents, documents + n_documents);
        RetryPolicy retry;
        retry.max_attempts = max_attempts;
        ParsedCandidates parsed = fetch_candidates(endpoint_url, docs,
                                                   std::chrono::milliseconds(timeout_ms), retry);
        if (out_rejects_json) *out_rejects_json = copy_string(rejects_to_json(parsed.rejects));
        out = new kgf_batch{std::move(parsed.batch)};
    });
    return st == KGF_OK ? out : nullptr;
}

size_t kgf_batch_size(const kgf_batch* batch) {
    return batch ? batch->impl.candidates.size() : 0;
}

kgf_status kgf_batch_serialize(const kgf_batch* batch, char** out_jsonl) {
    if (auto st = require(batch && out_jsonl, "batch/out is NULL"); st != KGF_OK) return st;
    return guarded([&] { *out_jsonl = copy_string(serialize_candidates(batch->impl)); });
}

void kgf_batch_free(kgf_batch* batch) { delete batch; }

/* ---- expansion ------------------------------------------------------------ */

kgf_status kgf_expand(kgf_graph* graph, const kgf_batch* batch, double tau,
                      kgf_conflict_policy policy, const char* exclusivity_pairs,
                      char** out_report_json, char** out_report_text) {
    if (auto st = require(graph && batch, "graph/batch is NULL"); st != KGF_OK) return st;
    return guarded([&] {
        ExpansionConfig config;
        config.tau = tau;
        config.conflict_policy =
            policy == KGF_CONFLICT_REJECT ? ConflictPolicy::reject : ConflictPolicy::flag;
        if (exclusivity_pairs && *exclusivity_pairs) {
            std::string_view spec(exclusivity_pairs);
            std::size_t pos = 0;
            while (pos <= spec.size()) {
                std::size_t comma = spec.find(',', pos);
                std::string_view entry = comma == std::string_view::npos
                                             ? spec.substr(pos)
                                             : spec.substr(pos, comma - pos);
                pos = comma == std::string_view::npos ? spec.size() + 1 : comma + 1;
                if (entry.empty()) continue;
                std::size_t bar = entry.find('|');
                if (bar == std::string_view::npos || entry.find('|', bar + 1) != std::string_view::npos) {
                    throw Error(ErrorCode::invalid_input,
                                "exclusivity entry must be `a|b`: " + std::string(entry));
                }
                config.exclusivity_rules.emplace_back(std::string(entry.substr(0, bar)),
                                                      std::string(entry.substr(bar + 1)));
            }
        }
        // the writer lock is held for the whole expansion run
        std::lock_guard lock(graph->writer);
        ExpansionReport report = expand(graph->impl, batch->impl, config);
        if (out_report_json) *out_report_json = copy_string(report_to_json(report));
        if (out_report_text) *out_report_text = copy_string(report_to_text(report));
    });
}

kgf_status kgf_vertex_growth(uint64_t before, uint64_t after, double* out) {
    if (auto st = require(out != nullptr, "out is NULL"); st != KGF_OK) return st;
    return guarded([&] { *out = vertex_growth(std::size_t(before), std::size_t(after)); });
}

kgf_status kgf_edge_growth(uint64_t before, uint64_t after, double* out) {
    if (auto st = require(out != nullptr, "out is NULL"); st != KGF_OK) return st;
    return guarded([&] { *out = edge_growth(std::size_t(before), std::size_t(after)); });
}

kgf_status kgf_conflict_rate(uint64_t conflicts, uint64_t new_edges, double* out) {
    if (auto st = require(out != nullptr, "out is NULL"); st != KGF_OK) return st;
    *out = conflict_rate(std::size_t(conflicts), std::size_t(new_edges));
    return KGF_OK;
}

kgf_status kgf_bayesian_link_probability(double p, double* out) {
    if (auto st = require(out != nullptr, "out is NULL"); st != KGF_OK) return st;
    return guarded([&] { *out = bayesian_link_probability(p); });
}

/* ---- embedding models ------------------------------------------------------ */

void kgf_train_config_default(kgf_train_config* config) {
    if (!config) return;
    TrainConfig defaults;
    config->epochs = defaults.epochs;
    config->batch_size = defaults.batch_size;
    config->learning_rate = defaults.learning_rate;
    config->margin = defaults.margin;
    config->negatives_per_positive = defaults.negatives_per_positive;
    config->l2_weight = defaults.l2_weight;
    config->seed = defaults.seed;
    config->threads = defaults.threads;
}

kgf_model* kgf_model_init(kgf_model_kind kind, uint32_t dim, uint64_t n_entities,
                          uint64_t n_relations, uint64_t seed, kgf_norm norm) {
    kgf_model* out = nullptr;
    kgf_status st = guarded([&] {
        out = new kgf_model{EmbeddingModel::init(ModelKind(kind), dim, std::size_t(n_entities),
                                                 std::size_t(n_relations), seed,
                                                 norm == KGF_NORM_L1 ? Norm::l1 : Norm::l2)};
    });
    return st == KGF_OK ? out : nullptr;
}

void kgf_model_free(kgf_model* model) { delete model; }

kgf_status kgf_model_save(const kgf_model* model, const char* path) {
    if (auto st = require(model && path, "model/path is NULL"); st != KGF_OK) return st;
    return guarded([&] { model->impl.save(path); });
}

kgf_model* kgf_model_load(const char* path) {
    if (!path) {
        set_error(KGF_ERR_INVALID, "path is NULL");
        return nullptr;
    }
    kgf_model* out = nullptr;
    kgf_status st = guarded([&] { out = new kgf_model{EmbeddingModel::load(path)}; });
    return st == KGF_OK ? out : nullptr;
}

kgf_status kgf_model_info(const kgf_model* model, kgf_model_kind* kind, uint32_t* dim,
                          uint64_t* n_entities, uint64_t* n_relations) {
    if (auto st = require(model != nullptr, "model is NULL"); st != KGF_OK) return st;
    if (kind) *kind = kgf_model_kind(model->impl.kind());
    if (dim) *dim = uint32_t(model->impl.dim());
    if (n_entities) *n_entities = model->impl.n_entities();
    if (n_relations) *n_relations = model->impl.n_relations();
    return KGF_OK;
}

kgf_status kgf_model_score(const kgf_model* model, int64_t head, int64_t relation, int64_t tail,
                           double* out) {
    if (auto st = require(model && out, "model/out is NULL"); st != KGF_OK) return st;
    for (int64_t id : {head, relation, tail}) {
        if (auto st = check_handle_id(id); st != KGF_OK) return st;
    }
    return guarded([&] { *out = model->impl.score(EntityId(head), RelationId(relation), EntityId(tail)); });
}

kgf_status kgf_model_train(kgf_model* model, const kgf_graph* graph,
                           const kgf_train_config* config, double* out_loss_trace) {
    if (auto st = require(model && graph && config, "model/graph/config is NULL"); st != KGF_OK) {
        return st;
    }
    return guarded([&] {
        TrainConfig cfg;
        cfg.epochs = std::size_t(config->epochs);
        cfg.batch_size = std::size_t(config->batch_size);
        cfg.learning_rate = config->learning_rate;
        cfg.margin = config->margin;
        cfg.negatives_per_positive = std::size_t(config->negatives_per_positive);
        cfg.l2_weight = config->l2_weight;
        cfg.seed = config->seed;
        cfg.threads = std::size_t(config->threads);

        std::vector<Triple> triples;
        triples.reserve(graph->impl.edges().size());
        for (const Edge& e : graph->impl.edges()) {
            triples.push_back(Triple{e.head, e.relation, e.tail});
        }
        std::vector<double> losses = train(model->impl, triples, cfg);
        if (out_loss_trace) {
            for (std::size_t i = 0; i < losses.size(); ++i) out_loss_trace[i] = losses[i];
        }
    });
}

kgf_status kgf_gradient_check(kgf_model_kind kind, uint32_t dim, uint64_t seed,
                              double* out_max_rel_error) {
    if (auto st = require(out_max_rel_error != nullptr, "out is NULL"); st != KGF_OK) return st;
    return guarded([&] { *out_max_rel_error = gradient_check(ModelKind(kind), dim, seed); });
}

/* ---- evaluation ------------------------------------------------------------- */

kgf_status kgf_evaluate_files(const kgf_model* model, const kgf_graph* train_graph,
                              const char* valid_tsv, const char* test_tsv, uint32_t threads,
                              kgf_ranking_metrics* out) {
    if (auto st = require(model && train_graph && test_tsv && out, "model/graph/test/out is NULL");
        st != KGF_OK) {
        return st;
    }
    return guarded([&] {
        const KnowledgeGraph& base = train_graph->impl;
        const EmbeddingModel& m = model->impl;
        if (m.n_entities() != base.entities().size() || m.n_relations() != base.relations().size()) {
            throw Error(ErrorCode::invalid_input,
                        "model id space does not match the training graph");
        }

        TripleSet known = base.triple_set();
        std::vector<Triple> test;
        std::size_t skipped_triples = 0;

        // Maps a split's triples into the training id space; unresolvable
        // triples are dropped (and counted when collect is set).
        auto merge_split = [&](const KnowledgeGraph& split, std::vector<Triple>* collect) {
            for (const Edge& e : split.edges()) {
                auto h = base.find_entity(split.entity(e.head).label);
                auto r = base.find_relation(split.relation(e.relation).name);
                auto t = base.find_entity(split.entity(e.tail).label);
                if (h && r && t) {
                    Triple triple{*h, *r, *t};
                    known.insert(triple);
                    if (collect) collect->push_back(triple);
                } else if (collect) {
                    ++skipped_triples;
                }
            }
        };

        if (valid_tsv && *valid_tsv) {
            KnowledgeGraph valid = load_triples_tsv(valid_tsv);
            merge_split(valid, nullptr);
        }
        KnowledgeGraph test_graph = load_triples_tsv(test_tsv);
        merge_split(test_graph, &test);

        RankingMetrics metrics;
        if (!test.empty()) {
            auto queries = rank_queries(m, test, known, threads == 0 ? 1 : threads);
            metrics = compute_metrics(std::span<const RankedQuery>(queries));
        }
        out->mr = metrics.mr;
        out->mrr = metrics.mrr;
        out->p_at_1 = metrics.p_at.count(1) ? metrics.p_at.at(1) : 0.0;
        out->p_at_3 = metrics.p_at.count(3) ? metrics.p_at.at(3) : 0.0;
        out->p_at_10 = metrics.p_at.count(10) ? metrics.p_at.at(10) : 0.0;
        out->n_queries = metrics.n_queries;
        out->skipped_queries = skipped_triples * 2;
    });
}

kgf_status kgf_metrics_table_tsv(const kgf_ranking_metrics* metrics, const char* dataset,
                                 const char* model_name, char** out) {
    if (auto st = require(metrics && dataset && model_name && out, "argument is NULL");
        st != KGF_OK) {
        return st;
    }
    return guarded([&] {
        *out = copy_string(metrics_table_tsv(dataset, model_name, to_core_metrics(*metrics)));
    });
}

kgf_status kgf_metrics_table_json(const kgf_ranking_metrics* metrics, const char* dataset,
                                  const char* model_name, char** out) {
    if (auto st = require(metrics && dataset && model_name && out, "argument is NULL");
        st != KGF_OK) {
        return st;
    }
    return guarded([&] {
        *out = copy_string(metrics_table_json(dataset, model_name, to_core_metrics(*metrics),
                                              std::size_t(metrics->skipped_queries)));
    });
}

kgf_status kgf_f1(double precision, double recall, double* out) {
    if (auto st = require(out != nullptr, "out is NULL"); st != KGF_OK) return st;
    return guarded([&] { *out = f1(precision, recall); });
}

/* ---- network analytics -------------------------------------------------------- */

kgf_status kgf_graph_network_report(const kgf_graph* graph, uint32_t threads,
                                    kgf_network_report* out) {
    if (auto st = require(graph && out, "graph/out is NULL"); st != KGF_OK) return st;
    return guarded([&] {
        NetworkReport r = network_report(graph->impl, threads == 0 ? 1 : threads);
        out->n_nodes = r.n_nodes;
        out->n_edges = r.n_edges;
        out->density = r.density;
        out->avg_clustering = r.avg_clustering;
        out->diameter = r.diameter;
        out->lcc_size = r.lcc_size;
    });
}

kgf_status kgf_density(uint64_t n_nodes, uint64_t n_edges, double* out) {
    if (auto st = require(out != nullptr, "out is NULL"); st != KGF_OK) return st;
    return guarded([&] { *out = density(std::size_t(n_nodes), std::size_t(n_edges)); });
}

kgf_status kgf_network_table_tsv(const kgf_network_report* report, const char* name, char** out) {
    if (auto st = require(report && name && out, "argument is NULL"); st != KGF_OK) return st;
    return guarded([&] { *out = copy_string(network_table_tsv(name, to_core_report(*report))); });
}

kgf_status kgf_network_table_json(const kgf_network_report* report, const char* name, char** out) {
    if (auto st = require(report && name && out, "argument is NULL"); st != KGF_OK) return st;
    return guarded([&] { *out = copy_string(network_table_json(name, to_core_report(*report))); });
}

kgf_status kgf_graph_edge_list_tsv(const kgf_graph* graph, char** out) {
    if (auto st = require(graph && out, "graph/out is NULL"); st != KGF_OK) return st;
    return guarded([&] { *out = copy_string(edge_list_tsv(graph->impl)); });
}

} // extern "C"
