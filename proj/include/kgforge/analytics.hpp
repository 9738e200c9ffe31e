#pragma once
// Complex-network measurements: directed density, clustering coefficients and
// diameter on the undirected projection, and a composite report.

#include "kgforge/graph.hpp"

#include <string>
#include <string_view>

namespace kgforge {

struct NetworkReport {
    std::size_t n_nodes = 0;
    std::size_t n_edges = 0;
    double density = 0.0;        // directed: |E| / (|V| (|V| - 1))
    double avg_clustering = 0.0; // mean over all nodes, undirected projection
    std::size_t diameter = 0;    // 0 when the largest component has < 2 nodes
    std::size_t lcc_size = 0;    // nodes in the largest connected component
};

// Undirected projection of the stored directed multigraph: parallel edges
// between a node pair collapse to one neighbor, self-loops are dropped.
// Neighbor lists are sorted.
class UndirectedView {
public:
    explicit UndirectedView(const KnowledgeGraph& graph);

    std::size_t node_count() const { return adjacency_.size(); }
    std::span<const EntityId> neighbors(EntityId id) const { return adjacency_[id]; }
    bool connected(EntityId a, EntityId b) const;

    // Ids of the largest connected component (singleton components included
    // when they are the largest).
    std::vector<EntityId> largest_component() const;

private:
    std::vector<std::vector<EntityId>> adjacency_;
};

// Throws invalid_input when n_nodes < 2.
double density(std::size_t n_nodes, std::size_t n_edges);

// Triangles through the node over deg(deg-1)/2; 0 when deg < 2. Throws
// not_found for an unknown node.
double local_clustering(const KnowledgeGraph& graph, EntityId node);

// Mean of local_clustering over all nodes. Throws invalid_input on an empty
// graph.
double average_clustering(const KnowledgeGraph& graph);

// Max eccentricity over the largest connected component of the undirected
// projection. Per-source BFS fans out across threads with a deterministic
// max reduction. Throws undefined_metric when that component has fewer than
// 2 nodes.
std::size_t diameter(const KnowledgeGraph& graph, std::size_t threads = 1);

NetworkReport network_report(const KnowledgeGraph& graph, std::size_t threads = 1);

// One row in the comparison-table schema:
// name, #Nodes, #Edges, Avg clustering, Diameter (TSV with header).
std::string network_table_tsv(std::string_view name, const NetworkReport& report);
std::string network_table_json(std::string_view name, const NetworkReport& report);

// Plain `u<TAB>v` edge list of the undirected projection, one line per
// distinct pair with u < v, consumable by external network tools.
std::string edge_list_tsv(const KnowledgeGraph& graph);

} // namespace kgforge
