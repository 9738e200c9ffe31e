#pragma once
// Shared fixture builders: deterministic graphs with exact counts, the
// ring KG used for learnability checks, and temp-file helpers.

#include "kgforge/candidates.hpp"
#include "kgforge/graph.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

namespace fixtures {

// Graph with exact |V|, |E|, entity-type and relation-type counts. Edges are
// distinct (head, tail) pairs enumerated by increasing ring offset, so any
// n_edges <= |V| * (|V| - 1) works.
inline kgforge::KnowledgeGraph counts_graph(std::size_t n_entities, std::size_t n_edges,
                                            std::size_t n_entity_types,
                                            std::size_t n_relation_types) {
    kgforge::KnowledgeGraph graph;
    for (std::size_t i = 0; i < n_entities; ++i) {
        graph.add_entity("n" + std::to_string(i), "type" + std::to_string(i % n_entity_types));
    }
    for (std::size_t r = 0; r < n_relation_types; ++r) {
        graph.add_relation("rel" + std::to_string(r));
    }
    std::size_t added = 0;
    for (std::size_t offset = 1; added < n_edges; ++offset) {
        for (std::size_t h = 0; h < n_entities && added < n_edges; ++h) {
            auto head = kgforge::EntityId(h);
            auto tail = kgforge::EntityId((h + offset) % n_entities);
            auto rel = kgforge::RelationId(added % n_relation_types);
            graph.add_edge(head, rel, tail, 1.0);
            ++added;
        }
    }
    return graph;
}

// Candidates that grow the counts_graph(3426, 5526, ...) fixture by exactly
// 724 entities and 1764 edges when every confidence clears the threshold.
inline kgforge::ExtractionBatch growth_batch(double confidence = 0.9) {
    kgforge::ExtractionBatch batch;
    batch.corpus_id = "growth-replay";
    batch.extractor_id = "fixture";
    for (std::size_t i = 0; i < 724; ++i) {
        kgforge::CandidateTriple c;
        c.head_label = "x" + std::to_string(i); // new entity
        c.relation_label = "rel" + std::to_string(i % 20);
        c.tail_label = "n" + std::to_string(i % 3426);
        c.head_type = "typeNew";
        c.tail_type = "type0";
        c.confidence = confidence;
        c.source_doc = "fixture/new/" + std::to_string(i);
        batch.candidates.push_back(std::move(c));
    }
    // counts_graph used offsets 1 and 2 (first 2100 heads); offset 3 is free
    for (std::size_t h = 0; h < 1040; ++h) {
        kgforge::CandidateTriple c;
        c.head_label = "n" + std::to_string(h);
        c.relation_label = "rel" + std::to_string(h % 20);
        c.tail_label = "n" + std::to_string((h + 3) % 3426);
        c.confidence = confidence;
        c.source_doc = "fixture/existing/" + std::to_string(h);
        batch.candidates.push_back(std::move(c));
    }
    return batch;
}

// Directed ring: i -next-> (i+1) mod n.
inline kgforge::KnowledgeGraph ring_graph(std::size_t n) {
    kgforge::KnowledgeGraph graph;
    for (std::size_t i = 0; i < n; ++i) {
        graph.add_entity("node" + std::to_string(i));
    }
    auto next = graph.add_relation("next");
    for (std::size_t i = 0; i < n; ++i) {
        graph.add_edge(kgforge::EntityId(i), next, kgforge::EntityId((i + 1) % n), 1.0);
    }
    return graph;
}

// Undirected-style path stored as directed edges 0->1->...->n-1.
inline kgforge::KnowledgeGraph path_graph(std::size_t n) {
    kgforge::KnowledgeGraph graph;
    for (std::size_t i = 0; i < n; ++i) {
        graph.add_entity("p" + std::to_string(i));
    }
    auto rel = graph.add_relation("to");
    for (std::size_t i = 0; i + 1 < n; ++i) {
        graph.add_edge(kgforge::EntityId(i), rel, kgforge::EntityId(i + 1), 1.0);
    }
    return graph;
}

// Complete directed cycle cover of K_n: one stored edge per unordered pair.
inline kgforge::KnowledgeGraph complete_graph(std::size_t n) {
    kgforge::KnowledgeGraph graph;
    for (std::size_t i = 0; i < n; ++i) {
        graph.add_entity("k" + std::to_string(i));
    }
    auto rel = graph.add_relation("to");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            graph.add_edge(kgforge::EntityId(i), rel, kgforge::EntityId(j), 1.0);
        }
    }
    return graph;
}

// K4 minus the (c, d) edge: clustering {a: 2/3, b: 2/3, c: 1, d: 1}.
inline kgforge::KnowledgeGraph k4_minus_edge() {
    kgforge::KnowledgeGraph graph;
    auto a = graph.add_entity("a");
    auto b = graph.add_entity("b");
    auto c = graph.add_entity("c");
    auto d = graph.add_entity("d");
    auto rel = graph.add_relation("to");
    graph.add_edge(a, rel, b, 1.0);
    graph.add_edge(a, rel, c, 1.0);
    graph.add_edge(a, rel, d, 1.0);
    graph.add_edge(b, rel, c, 1.0);
    graph.add_edge(b, rel, d, 1.0);
    return graph;
}

class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("kgforge_test_" + std::to_string(rd()) + "_" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path file(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return content;
}

} // namespace fixtures
