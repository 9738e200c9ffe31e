#pragma once
// Directed typed knowledge graph with label/triple indices and matrix views.
//
// Entities and relation types are interned by normalized label; ids are dense
// and never reused. Edges are unique per (head, relation, tail); re-insertion
// keeps the maximum confidence. All other modules read and mutate the graph
// only through this type.
//
// Concurrency: a KnowledgeGraph is a plain value. Mutations must be
// serialized by the caller (single writer); any number of threads may read
// between mutations.

#include "kgforge/error.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace kgforge {

using EntityId = std::uint32_t;
using RelationId = std::uint32_t;
using EdgeId = std::uint64_t;

enum class EdgeStatus : std::uint8_t {
    asserted,
    accepted,
    flagged_conflict,
};

struct Entity {
    EntityId id;
    std::string label; // normalized, unique
    std::string entity_type;
};

struct RelationType {
    RelationId id;
    std::string name; // normalized, unique
    // Relations sharing a non-empty class between the same ordered entity
    // pair are mutually exclusive.
    std::string exclusivity_class;
};

struct Edge {
    EntityId head;
    RelationId relation;
    EntityId tail;
    double confidence; // in [0, 1]
    std::string provenance;
    EdgeStatus status;
};

struct Triple {
    EntityId head;
    RelationId relation;
    EntityId tail;

    bool operator==(const Triple&) const = default;
};

struct TripleHash {
    std::size_t operator()(const Triple& t) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (std::uint64_t v : {std::uint64_t(t.head), std::uint64_t(t.relation), std::uint64_t(t.tail)}) {
            h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return std::size_t(h);
    }
};

using TripleSet = std::unordered_set<Triple, TripleHash>;

struct GraphCounts {
    std::size_t entities = 0;
    std::size_t edges = 0;
    std::size_t entity_types = 0;   // distinct non-empty type tags
    std::size_t relation_types = 0; // size of the relation table
};

// Relation-agnostic binary adjacency: at(i, j) is true iff any edge i->j
// exists. Rows hold sorted distinct tail ids. A dense |V|x|V| expansion is
// opt-in and refused above a node limit since it costs O(n^2) space.
class SparseAdjacency {
public:
    static constexpr std::size_t kDenseNodeLimit = 10000;

    SparseAdjacency(std::size_t n_nodes, std::vector<std::vector<EntityId>> rows)
        : n_nodes_(n_nodes), rows_(std::move(rows)) {}

    std::size_t node_count() const { return n_nodes_; }
    bool at(EntityId i, EntityId j) const;
    std::size_t nonzero_count() const;
    std::span<const EntityId> row(EntityId i) const;

    // Row-major n*n boolean matrix. Throws invalid_input when
    // node_count() > node_limit.
    std::vector<std::uint8_t> dense(std::size_t node_limit = kDenseNodeLimit) const;

private:
    std::size_t n_nodes_;
    std::vector<std::vector<EntityId>> rows_;
};

class KnowledgeGraph {
public:
    explicit KnowledgeGraph(bool allow_self_loops = false)
        : allow_self_loops_(allow_self_loops) {}

    // Lowercase, trim, collapse internal whitespace runs to single spaces.
    static std::string normalize_label(std::string_view raw);

    // Idempotent on the normalized label; the type tag is recorded on first
    // insertion. Throws invalid_input when the label is empty after
    // normalization.
    EntityId add_entity(std::string_view label, std::string_view entity_type = {});

    // Idempotent on the normalized name.
    RelationId add_relation(std::string_view name, std::string_view exclusivity_class = {});

    // Inserts or max-merges the (head, relation, tail) edge and updates all
    // indices. Returns the edge id. Throws not_found for unknown ids,
    // invalid_input for confidence outside [0, 1] or a disallowed self-loop.
    EdgeId add_edge(EntityId head, RelationId relation, EntityId tail, double confidence,
                    std::string_view provenance = {}, EdgeStatus status = EdgeStatus::asserted);

    bool has_edge(EntityId head, RelationId relation, EntityId tail) const;
    std::optional<EdgeId> find_edge(EntityId head, RelationId relation, EntityId tail) const;

    std::optional<EntityId> find_entity(std::string_view label) const;
    std::optional<RelationId> find_relation(std::string_view name) const;

    const Entity& entity(EntityId id) const;
    const RelationType& relation(RelationId id) const;
    const Edge& edge(EdgeId id) const;

    std::span<const Entity> entities() const { return entities_; }
    std::span<const RelationType> relations() const { return relations_; }
    std::span<const Edge> edges() const { return edges_; }

    // Edge ids ordered by (tail, relation, id) / (head, relation, id).
    std::span<const EdgeId> out_edges(EntityId id) const;
    std::span<const EdgeId> in_edges(EntityId id) const;

    GraphCounts counts() const;
    SparseAdjacency adjacency_view() const;
    TripleSet triple_set() const;

    bool allow_self_loops() const { return allow_self_loops_; }

    // Full consistency pass over tables and indices; throws internal on any
    // mismatch.
    void audit() const;

private:
    void check_entity(EntityId id) const;
    void check_relation(RelationId id) const;

    bool allow_self_loops_;
    std::vector<Entity> entities_;
    std::vector<RelationType> relations_;
    std::vector<Edge> edges_;
    std::unordered_map<std::string, EntityId> entity_index_;
    std::unordered_map<std::string, RelationId> relation_index_;
    std::unordered_map<Triple, EdgeId, TripleHash> triple_index_;
    std::vector<std::vector<EdgeId>> out_index_;
    std::vector<std::vector<EdgeId>> in_index_;
};

// TSV triple files: `head<TAB>relation<TAB>tail` with an optional fourth
// confidence column in [0, 1] (default 1.0). UTF-8, LF line endings. Blank
// lines are skipped; duplicate triples merge per add_edge. Parse failures
// report the 1-based line number.
KnowledgeGraph load_triples_tsv(const std::filesystem::path& path);
void save_triples_tsv(const KnowledgeGraph& graph, const std::filesystem::path& path);

// Stream variants used by the file functions and by tests.
KnowledgeGraph load_triples_tsv_text(std::string_view text);
std::string save_triples_tsv_text(const KnowledgeGraph& graph);

} // namespace kgforge
