#pragma once
// Thresholded integration of candidate triples into the graph: confidence
// gate, conflict detection against declared mutually exclusive relation
// pairs, max-merge edge insertion, and the growth/consistency metrics.

#include "kgforge/candidates.hpp"
#include "kgforge/graph.hpp"

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace kgforge {

enum class ConflictPolicy {
    reject, // conflicting candidates are dropped
    flag,   // inserted with status flagged_conflict and counted
};

// Unordered pairs of normalized relation names that may not both hold
// between the same ordered entity pair.
class ExclusivityRules {
public:
    ExclusivityRules() = default;

    void add(std::string_view a, std::string_view b);
    bool mutually_exclusive(std::string_view a, std::string_view b) const;
    bool empty() const { return pairs_.empty(); }

private:
    std::set<std::pair<std::string, std::string>> pairs_;
};

struct ExpansionConfig {
    double tau = 0.7; // confidence threshold
    ConflictPolicy conflict_policy = ConflictPolicy::flag;
    std::vector<std::pair<std::string, std::string>> exclusivity_rules;
};

struct ExpansionReport {
    // Candidate disposition. Every candidate lands in exactly one of
    // accepted_edges, merged_candidates, rejected_below_tau or
    // conflicts_rejected; conflicts_detected overlaps accepted/merged under
    // the flag policy.
    std::size_t total_candidates = 0;
    std::size_t accepted_edges = 0;      // new edges inserted (flagged ones included)
    std::size_t merged_candidates = 0;   // max-merge hits, no new edge
    std::size_t rejected_below_tau = 0;
    std::size_t conflicts_detected = 0;
    std::size_t conflicts_rejected = 0;  // nonzero only under ConflictPolicy::reject
    std::size_t new_entities = 0;

    std::size_t v_before = 0;
    std::size_t v_after = 0;
    std::size_t e_before = 0;
    std::size_t e_after = 0;

    // Growth from an empty base and density below 2 nodes are reported as 0.
    double vertex_growth_pct = 0.0;
    double edge_growth_pct = 0.0;
    double density_before = 0.0;
    double density_after = 0.0;
    double conflict_rate_pct = 0.0;
};

// Integrates the batch in order. Entities are created only for candidates
// that pass the threshold and the conflict policy; each candidate is applied
// atomically (validated before any mutation). Throws invalid_input on a bad
// config or a candidate violating the batch invariants.
ExpansionReport expand(KnowledgeGraph& graph, const ExtractionBatch& batch,
                       const ExpansionConfig& config);

// First existing edge (head, r', tail) over the candidate's ordered entity
// pair whose relation is exclusive with the candidate's, by declared rule
// pair or shared non-empty exclusivity class. A relation never conflicts
// with itself. Unresolvable entities mean no conflict.
std::optional<EdgeId> detect_conflict(const KnowledgeGraph& graph, const CandidateTriple& candidate,
                                      const ExclusivityRules& rules);

// |E_conflict| / |E_new| * 100; total: 0 when no new edges.
double conflict_rate(std::size_t conflicts, std::size_t new_edges);

// (after - before) / before * 100. Throws undefined_metric when before == 0.
double vertex_growth(std::size_t before, std::size_t after);
double edge_growth(std::size_t before, std::size_t after);

// p / (1 + p): maps [0, 1] into [0, 0.5], strictly increasing. Reporting
// transform only; the expansion threshold applies to raw confidences.
double bayesian_link_probability(double p);

std::string report_to_json(const ExpansionReport& report);
std::string report_to_text(const ExpansionReport& report);

} // namespace kgforge
