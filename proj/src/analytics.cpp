#include "kgforge/analytics.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <deque>
#include <thread>

namespace kgforge {

namespace {

std::string format_fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

// BFS distances from source; unreachable nodes stay SIZE_MAX.
std::vector<std::size_t> bfs_distances(const UndirectedView& view, EntityId source) {
    std::vector<std::size_t> dist(view.node_count(), SIZE_MAX);
    std::deque<EntityId> queue;
    dist[source] = 0;
    queue.push_back(source);
    while (!queue.empty()) {
        EntityId u = queue.front();
        queue.pop_front();
        for (EntityId v : view.neighbors(u)) {
            if (dist[v] == SIZE_MAX) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

long double clustering_of(const UndirectedView& view, EntityId node) {
    auto neighbors = view.neighbors(node);
    std::size_t deg = neighbors.size();
    if (deg < 2) return 0.0L;
    std::size_t links = 0;
    for (std::size_t i = 0; i < deg; ++i) {
        for (std::size_t j = i + 1; j < deg; ++j) {
            if (view.connected(neighbors[i], neighbors[j])) ++links;
        }
    }
    return (long double)(links) / ((long double)(deg) * (long double)(deg - 1) / 2.0L);
}

} // namespace

UndirectedView::UndirectedView(const KnowledgeGraph& graph) : adjacency_(graph.entities().size()) {
    for (const Edge& e : graph.edges()) {
        if (e.head == e.tail) continue;
        adjacency_[e.head].push_back(e.tail);
        adjacency_[e.tail].push_back(e.head);
    }
    for (auto& row : adjacency_) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
}

bool UndirectedView::connected(EntityId a, EntityId b) const {
    const auto& row = adjacency_[a];
    return std::binary_search(row.begin(), row.end(), b);
}

std::vector<EntityId> UndirectedView::largest_component() const {
    std::vector<int> component(node_count(), -1);
    int next = 0;
    std::size_t best_size = 0;
    int best = -1;
    for (EntityId start = 0; start < node_count(); ++start) {
        if (component[start] != -1) continue;
        int label = next++;
        std::size_t size = 0;
        std::deque<EntityId> queue{start};
        component[start] = label;
        while (!queue.empty()) {
            EntityId u = queue.front();
            queue.pop_front();
            ++size;
            for (EntityId v : neighbors(u)) {
                if (component[v] == -1) {
                    component[v] = label;
                    queue.push_back(v);
                }
            }
        }
        if (size > best_size) {
            best_size = size;
            best = label;
        }
    }
    std::vector<EntityId> members;
    members.reserve(best_size);
    for (EntityId id = 0; id < node_count(); ++id) {
        if (component[id] == best) members.push_back(id);
    }
    return members;
}

double density(std::size_t n_nodes, std::size_t n_edges) {
    if (n_nodes < 2) {
        throw Error(ErrorCode::invalid_input, "density needs at least 2 nodes");
    }
    return double(n_edges) / (double(n_nodes) * double(n_nodes - 1));
}

double local_clustering(const KnowledgeGraph& graph, EntityId node) {
    if (node >= graph.entities().size()) {
        throw Error(ErrorCode::not_found, "unknown entity id " + std::to_string(node));
    }
    return double(clustering_of(UndirectedView(graph), node));
}

double average_clustering(const KnowledgeGraph& graph) {
    std::size_t n = graph.entities().size();
    if (n == 0) {
        throw Error(ErrorCode::invalid_input, "average clustering undefined on an empty graph");
    }
    UndirectedView view(graph);
    // extended-precision accumulator so small rational means round correctly
    long double sum = 0.0L;
    for (EntityId id = 0; id < n; ++id) sum += clustering_of(view, id);
    return double(sum / (long double)(n));
}

namespace {

std::size_t component_diameter(const UndirectedView& view, const std::vector<EntityId>& members,
                               std::size_t threads) {
    auto eccentricity_sweep = [&view, &members](std::size_t lo, std::size_t hi) {
        std::size_t max_dist = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            auto dist = bfs_distances(view, members[i]);
            for (EntityId target : members) {
                if (dist[target] != SIZE_MAX) max_dist = std::max(max_dist, dist[target]);
            }
        }
        return max_dist;
    };
    std::size_t workers = std::max<std::size_t>(1, std::min(threads, members.size()));
    if (workers <= 1) return eccentricity_sweep(0, members.size());

    // per-worker maxima, reduced after the joins: order-independent
    std::vector<std::size_t> partial(workers, 0);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            partial[w] = eccentricity_sweep(members.size() * w / workers,
                                            members.size() * (w + 1) / workers);
        });
    }
    for (auto& thread : pool) thread.join();
    return *std::max_element(partial.begin(), partial.end());
}

} // namespace

std::size_t diameter(const KnowledgeGraph& graph, std::size_t threads) {
    UndirectedView view(graph);
    auto members = view.largest_component();
    if (members.size() < 2) {
        throw Error(ErrorCode::undefined_metric,
                    "diameter undefined: largest component has fewer than 2 nodes");
    }
    return component_diameter(view, members, threads);
}

NetworkReport network_report(const KnowledgeGraph& graph, std::size_t threads) {
    auto counts = graph.counts();
    if (counts.entities == 0) {
        throw Error(ErrorCode::invalid_input, "network report undefined on an empty graph");
    }
    NetworkReport report;
    report.n_nodes = counts.entities;
    report.n_edges = counts.edges;
    report.density = density(counts.entities, counts.edges);
    report.avg_clustering = average_clustering(graph);
    UndirectedView view(graph);
    auto members = view.largest_component();
    report.lcc_size = members.size();
    report.diameter = members.size() >= 2 ? component_diameter(view, members, threads) : 0;
    return report;
}

std::string network_table_tsv(std::string_view name, const NetworkReport& report) {
    std::string out = "name\t#Nodes\t#Edges\tAvg clustering\tDiameter\n";
    out += name;
    out += '\t';
    out += std::to_string(report.n_nodes);
    out += '\t';
    out += std::to_string(report.n_edges);
    out += '\t';
    out += format_fixed(report.avg_clustering, 6);
    out += '\t';
    out += std::to_string(report.diameter);
    out += '\n';
    return out;
}

std::string network_table_json(std::string_view name, const NetworkReport& report) {
    nlohmann::json obj;
    obj["name"] = std::string(name);
    obj["n_nodes"] = report.n_nodes;
    obj["n_edges"] = report.n_edges;
    obj["density"] = report.density;
    obj["avg_clustering"] = report.avg_clustering;
    obj["diameter"] = report.diameter;
    obj["lcc_size"] = report.lcc_size;
    return obj.dump(2) + "\n";
}

std::string edge_list_tsv(const KnowledgeGraph& graph) {
    UndirectedView view(graph);
    std::string out;
    for (EntityId u = 0; u < view.node_count(); ++u) {
        for (EntityId v : view.neighbors(u)) {
            if (u < v) {
                out += std::to_string(u);
                out += '\t';
                out += std::to_string(v);
                out += '\n';
            }
        }
    }
    return out;
}

} // namespace kgforge
