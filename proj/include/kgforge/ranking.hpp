#pragma once
// Filtered link-prediction ranking and the scalar retrieval metrics:
// MR, MRR, P@K (Hits@K: one relevant item per query), edge-set
// precision/recall and F1.

#include "kgforge/embedding.hpp"
#include "kgforge/graph.hpp"

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kgforge {

enum class QuerySide {
    replace_head,
    replace_tail,
};

struct RankedQuery {
    Triple query;
    QuerySide side;
    double rank; // >= 1; half-integral under the mean-of-ties rule
};

struct RankingMetrics {
    double mr = 0.0;
    double mrr = 0.0;
    std::map<int, double> p_at; // K in {1, 3, 10}
    std::size_t n_queries = 0;
};

// Scores all |V| replacements on the given side, removes candidates forming
// a known-true triple other than the query itself, and ranks the true answer
// with the mean-of-ties rule: rank = 1 + #strictly_better + #ties / 2.
// Throws invalid_input when the query is not in the known-true set.
double filtered_rank(const EmbeddingModel& model, const Triple& query, QuerySide side,
                     const TripleSet& known);

// Both replace-head and replace-tail queries per test triple, pooled in test
// order. Queries fan out across threads and merge deterministically by index.
std::vector<RankedQuery> rank_queries(const EmbeddingModel& model, std::span<const Triple> test,
                                      const TripleSet& known, std::size_t threads = 1);

// All three throw invalid_input on an empty rank list.
double mean_rank(std::span<const double> ranks);
double mean_reciprocal_rank(std::span<const double> ranks);
double precision_at_k(std::span<const double> ranks, int k);

RankingMetrics compute_metrics(std::span<const RankedQuery> queries);
RankingMetrics compute_metrics(std::span<const double> ranks);

struct EdgeSetScores {
    double precision = 0.0;
    double recall = 0.0;
};

// precision = |pred ∩ truth| / |pred|, recall = |pred ∩ truth| / |truth|.
// Throws undefined_metric when the respective denominator set is empty.
EdgeSetScores edge_set_precision_recall(const TripleSet& predicted, const TripleSet& truth);

// Harmonic mean; f1(0, 0) defined as 0.
double f1(double precision, double recall);

// One row in the link-prediction comparison schema, columns exactly
// (MR, MRR, P@1, P@3, P@10).
std::string metrics_table_tsv(std::string_view dataset, std::string_view model_name,
                              const RankingMetrics& metrics);
std::string metrics_table_json(std::string_view dataset, std::string_view model_name,
                               const RankingMetrics& metrics, std::size_t skipped_queries);

} // namespace kgforge
