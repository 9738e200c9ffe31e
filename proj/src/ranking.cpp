#include "kgforge/ranking.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <thread>

namespace kgforge {

double filtered_rank(const EmbeddingModel& model, const Triple& query, QuerySide side,
                     const TripleSet& known) {
    if (!known.contains(query)) {
        throw Error(ErrorCode::invalid_input, "query triple is not in the known-true set");
    }
    const double true_score = model.score(query.head, query.relation, query.tail);
    const EntityId true_entity = side == QuerySide::replace_head ? query.head : query.tail;

    std::size_t better = 0;
    std::size_t ties = 0;
    Triple candidate = query;
    for (EntityId c = 0; c < model.n_entities(); ++c) {
        if (c == true_entity) continue;
        (side == QuerySide::replace_head ? candidate.head : candidate.tail) = c;
        if (known.contains(candidate)) continue; // filtered protocol
        double s = model.score(candidate.head, candidate.relation, candidate.tail);
        if (s > true_score) {
            ++better;
        } else if (s == true_score) {
            ++ties;
        }
    }
    return 1.0 + double(better) + double(ties) / 2.0;
}

std::vector<RankedQuery> rank_queries(const EmbeddingModel& model, std::span<const Triple> test,
                                      const TripleSet& known, std::size_t threads) {
    std::vector<RankedQuery> out(test.size() * 2);
    auto run = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            out[2 * i] = RankedQuery{test[i], QuerySide::replace_head,
                                     filtered_rank(model, test[i], QuerySide::replace_head, known)};
            out[2 * i + 1] = RankedQuery{test[i], QuerySide::replace_tail,
                                         filtered_rank(model, test[i], QuerySide::replace_tail, known)};
        }
    };
    std::size_t workers = std::max<std::size_t>(1, std::min(threads, test.size()));
    if (workers <= 1) {
        run(0, test.size());
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(run, test.size() * w / workers, test.size() * (w + 1) / workers);
        }
        for (auto& th : pool) th.join();
    }
    return out;
}

namespace {

void require_ranks(std::span<const double> ranks) {
    if (ranks.empty()) {
        throw Error(ErrorCode::invalid_input, "metric undefined over an empty rank list");
    }
}

} // namespace

double mean_rank(std::span<const double> ranks) {
    require_ranks(ranks);
    double sum = 0.0;
    for (double r : ranks) sum += r;
    return sum / double(ranks.size());
}

double mean_reciprocal_rank(std::span<const double> ranks) {
    require_ranks(ranks);
    double sum = 0.0;
    for (double r : ranks) sum += 1.0 / r;
    return sum / double(ranks.size());
}

double precision_at_k(std::span<const double> ranks, int k) {
    require_ranks(ranks);
    if (k < 1) throw Error(ErrorCode::invalid_input, "K must be >= 1");
    std::size_t hits = 0;
    for (double r : ranks) {
        if (r <= double(k)) ++hits;
    }
    return double(hits) / double(ranks.size());
}

RankingMetrics compute_metrics(std::span<const double> ranks) {
    RankingMetrics m;
    m.mr = mean_rank(ranks);
    m.mrr = mean_reciprocal_rank(ranks);
    for (int k : {1, 3, 10}) m.p_at[k] = precision_at_k(ranks, k);
    m.n_queries = ranks.size();
    return m;
}

RankingMetrics compute_metrics(std::span<const RankedQuery> queries) {
    std::vector<double> ranks(queries.size());
    for (std::size_t i = 0; i < queries.size(); ++i) ranks[i] = queries[i].rank;
    return compute_metrics(std::span<const double>(ranks));
}

EdgeSetScores edge_set_precision_recall(const TripleSet& predicted, const TripleSet& truth) {
    if (predicted.empty()) {
        throw Error(ErrorCode::undefined_metric, "precision undefined: empty predicted edge set");
    }
    if (truth.empty()) {
        throw Error(ErrorCode::undefined_metric, "recall undefined: empty ground-truth edge set");
    }
    const TripleSet& smaller = predicted.size() <= truth.size() ? predicted : truth;
    const TripleSet& larger = predicted.size() <= truth.size() ? truth : predicted;
    std::size_t overlap = 0;
    for (const Triple& t : smaller) {
        if (larger.contains(t)) ++overlap;
    }
    return EdgeSetScores{double(overlap) / double(predicted.size()),
                         double(overlap) / double(truth.size())};
}

double f1(double precision, double recall) {
    if (!(precision >= 0.0 && precision <= 1.0) || !(recall >= 0.0 && recall <= 1.0)) {
        throw Error(ErrorCode::invalid_input, "precision/recall outside [0, 1]");
    }
    if (precision == 0.0 && recall == 0.0) return 0.0;
    return 2.0 * precision * recall / (precision + recall);
}

namespace {

std::string format_metric(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

} // namespace

std::string metrics_table_tsv(std::string_view dataset, std::string_view model_name,
                              const RankingMetrics& m) {
    std::string out = "dataset\tmodel\tMR\tMRR\tP@1\tP@3\tP@10\n";
    out += dataset;
    out += '\t';
    out += model_name;
    for (double v : {m.mr, m.mrr, m.p_at.at(1), m.p_at.at(3), m.p_at.at(10)}) {
        out += '\t';
        out += format_metric(v);
    }
    out += '\n';
    return out;
}

std::string metrics_table_json(std::string_view dataset, std::string_view model_name,
                               const RankingMetrics& m, std::size_t skipped_queries) {
    nlohmann::json obj;
    obj["dataset"] = std::string(dataset);
    obj["model"] = std::string(model_name);
    obj["MR"] = m.mr;
    obj["MRR"] = m.mrr;
    obj["P@1"] = m.p_at.at(1);
    obj["P@3"] = m.p_at.at(3);
    obj["P@10"] = m.p_at.at(10);
    obj["n_queries"] = m.n_queries;
    obj["skipped_queries"] = skipped_queries;
    return obj.dump(2) + "\n";
}

} // namespace kgforge
