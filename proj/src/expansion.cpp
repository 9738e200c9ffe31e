#include "kgforge/expansion.hpp"

#include "kgforge/analytics.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>

namespace kgforge {

void ExclusivityRules::add(std::string_view a, std::string_view b) {
    std::string na = KnowledgeGraph::normalize_label(a);
    std::string nb = KnowledgeGraph::normalize_label(b);
    if (na.empty() || nb.empty()) {
        throw Error(ErrorCode::invalid_input, "exclusivity rule with empty relation name");
    }
    if (nb < na) std::swap(na, nb);
    pairs_.emplace(std::move(na), std::move(nb));
}

bool ExclusivityRules::mutually_exclusive(std::string_view a, std::string_view b) const {
    std::string na = KnowledgeGraph::normalize_label(a);
    std::string nb = KnowledgeGraph::normalize_label(b);
    if (nb < na) std::swap(na, nb);
    return pairs_.contains(std::make_pair(na, nb));
}

std::optional<EdgeId> detect_conflict(const KnowledgeGraph& graph, const CandidateTriple& candidate,
                                      const ExclusivityRules& rules) {
    auto head = graph.find_entity(candidate.head_label);
    auto tail = graph.find_entity(candidate.tail_label);
    if (!head || !tail) return std::nullopt;

    const std::string rel_name = KnowledgeGraph::normalize_label(candidate.relation_label);
    std::string rel_class;
    if (auto rel = graph.find_relation(rel_name)) {
        rel_class = graph.relation(*rel).exclusivity_class;
    }

    // out_edges is ordered by (tail, relation, id), so the first hit is the
    // deterministic "first existing edge".
    for (EdgeId eid : graph.out_edges(*head)) {
        const Edge& e = graph.edge(eid);
        if (e.tail != *tail) continue;
        const RelationType& other = graph.relation(e.relation);
        if (other.name == rel_name) continue; // same relation: merge, not conflict
        if (rules.mutually_exclusive(rel_name, other.name)) return eid;
        if (!rel_class.empty() && rel_class == other.exclusivity_class) return eid;
    }
    return std::nullopt;
}

double conflict_rate(std::size_t conflicts, std::size_t new_edges) {
    if (new_edges == 0) return 0.0;
    return double(conflicts) / double(new_edges) * 100.0;
}

namespace {

double growth_pct(std::size_t before, std::size_t after, const char* what) {
    if (before == 0) {
        throw Error(ErrorCode::undefined_metric, std::string(what) + " growth undefined from 0");
    }
    return (double(after) - double(before)) / double(before) * 100.0;
}

double density_or_zero(std::size_t nodes, std::size_t edges) {
    return nodes >= 2 ? density(nodes, edges) : 0.0;
}

} // namespace

double vertex_growth(std::size_t before, std::size_t after) {
    return growth_pct(before, after, "vertex");
}

double edge_growth(std::size_t before, std::size_t after) {
    return growth_pct(before, after, "edge");
}

double bayesian_link_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::invalid_input, "probability outside [0, 1]");
    }
    return p / (1.0 + p);
}

ExpansionReport expand(KnowledgeGraph& graph, const ExtractionBatch& batch,
                       const ExpansionConfig& config) {
    if (!(config.tau >= 0.0 && config.tau <= 1.0)) {
        throw Error(ErrorCode::invalid_input, "tau outside [0, 1]");
    }
    ExclusivityRules rules;
    for (const auto& [a, b] : config.exclusivity_rules) rules.add(a, b);

    ExpansionReport report;
    report.v_before = graph.entities().size();
    report.e_before = graph.edges().size();
    report.density_before = density_or_zero(report.v_before, report.e_before);
    report.total_candidates = batch.candidates.size();

    for (const CandidateTriple& c : batch.candidates) {
        // Atomicity: everything that can fail is checked before any mutation.
        const std::string head_label = KnowledgeGraph::normalize_label(c.head_label);
        const std::string relation_label = KnowledgeGraph::normalize_label(c.relation_label);
        const std::string tail_label = KnowledgeGraph::normalize_label(c.tail_label);
        if (head_label.empty() || relation_label.empty() || tail_label.empty()) {
            throw Error(ErrorCode::invalid_input, "candidate with empty label");
        }
        if (!(c.confidence >= 0.0 && c.confidence <= 1.0)) {
            throw Error(ErrorCode::invalid_input, "candidate confidence outside [0, 1]");
        }
        if (!graph.allow_self_loops() && head_label == tail_label) {
            throw Error(ErrorCode::invalid_input, "candidate self-loop rejected");
        }

        if (c.confidence < config.tau) {
            ++report.rejected_below_tau;
            continue;
        }

        bool conflicted = detect_conflict(graph, c, rules).has_value();
        if (conflicted) {
            ++report.conflicts_detected;
            if (config.conflict_policy == ConflictPolicy::reject) {
                ++report.conflicts_rejected;
                continue;
            }
        }

        auto resolve = [&](const std::string& label, const std::string& type) {
            bool existed = graph.find_entity(label).has_value();
            EntityId id = graph.add_entity(label, type);
            if (!existed) ++report.new_entities;
            return id;
        };
        EntityId head = resolve(head_label, c.head_type);
        EntityId tail = resolve(tail_label, c.tail_type);
        RelationId rel = graph.add_relation(relation_label);

        bool existed = graph.has_edge(head, rel, tail);
        graph.add_edge(head, rel, tail, c.confidence, c.source_doc,
                       conflicted ? EdgeStatus::flagged_conflict : EdgeStatus::accepted);
        if (existed) {
            ++report.merged_candidates;
        } else {
            ++report.accepted_edges;
        }
    }

    report.v_after = graph.entities().size();
    report.e_after = graph.edges().size();
    report.vertex_growth_pct =
        report.v_before > 0 ? vertex_growth(report.v_before, report.v_after) : 0.0;
    report.edge_growth_pct =
        report.e_before > 0 ? edge_growth(report.e_before, report.e_after) : 0.0;
    report.density_after = density_or_zero(report.v_after, report.e_after);
    report.conflict_rate_pct = conflict_rate(report.conflicts_detected, report.accepted_edges);
    return report;
}

namespace {

nlohmann::json report_json_object(const ExpansionReport& r) {
    nlohmann::json obj;
    obj["total_candidates"] = r.total_candidates;
    obj["accepted_edges"] = r.accepted_edges;
    obj["merged_candidates"] = r.merged_candidates;
    obj["rejected_below_tau"] = r.rejected_below_tau;
    obj["conflicts_detected"] = r.conflicts_detected;
    obj["conflicts_rejected"] = r.conflicts_rejected;
    obj["new_entities"] = r.new_entities;
    obj["v_before"] = r.v_before;
    obj["v_after"] = r.v_after;
    obj["e_before"] = r.e_before;
    obj["e_after"] = r.e_after;
    obj["vertex_growth_pct"] = r.vertex_growth_pct;
    obj["edge_growth_pct"] = r.edge_growth_pct;
    obj["density_before"] = r.density_before;
    obj["density_after"] = r.density_after;
    obj["conflict_rate_pct"] = r.conflict_rate_pct;
    return obj;
}

std::string format_metric(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

} // namespace

std::string report_to_json(const ExpansionReport& report) {
    return report_json_object(report).dump(2) + "\n";
}

std::string report_to_text(const ExpansionReport& r) {
    std::string out;
    auto put_count = [&out](const char* key, std::size_t v) {
        out += key;
        out += " = ";
        out += std::to_string(v);
        out += '\n';
    };
    auto put_metric = [&out](const char* key, double v) {
        out += key;
        out += " = ";
        out += format_metric(v);
        out += '\n';
    };
    put_count("total_candidates", r.total_candidates);
    put_count("accepted_edges", r.accepted_edges);
    put_count("merged_candidates", r.merged_candidates);
    put_count("rejected_below_tau", r.rejected_below_tau);
    put_count("conflicts_detected", r.conflicts_detected);
    put_count("conflicts_rejected", r.conflicts_rejected);
    put_count("new_entities", r.new_entities);
    put_count("v_before", r.v_before);
    put_count("v_after", r.v_after);
    put_count("e_before", r.e_before);
    put_count("e_after", r.e_after);
    put_metric("vertex_growth_pct", r.vertex_growth_pct);
    put_metric("edge_growth_pct", r.edge_growth_pct);
    put_metric("density_before", r.density_before);
    put_metric("density_after", r.density_after);
    put_metric("conflict_rate_pct", r.conflict_rate_pct);
    return out;
}

} // namespace kgforge
