#include "kgforge/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace kgforge {

namespace {

std::string format_line_error(std::size_t line_no, const std::string& reason) {
    return "line " + std::to_string(line_no) + ": " + reason;
}

// Shortest round-trip decimal form, locale-independent.
std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

} // namespace

bool SparseAdjacency::at(EntityId i, EntityId j) const {
    if (i >= rows_.size()) return false;
    const auto& row = rows_[i];
    return std::binary_search(row.begin(), row.end(), j);
}

std::size_t SparseAdjacency::nonzero_count() const {
    std::size_t n = 0;
    for (const auto& row : rows_) n += row.size();
    return n;
}

std::span<const EntityId> SparseAdjacency::row(EntityId i) const {
    if (i >= rows_.size()) return {};
    return rows_[i];
}

std::vector<std::uint8_t> SparseAdjacency::dense(std::size_t node_limit) const {
    if (n_nodes_ > node_limit) {
        throw Error(ErrorCode::invalid_input,
                    "dense adjacency refused: " + std::to_string(n_nodes_) + " nodes exceeds limit " +
                        std::to_string(node_limit));
    }
    std::vector<std::uint8_t> m(n_nodes_ * n_nodes_, 0);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        for (EntityId j : rows_[i]) m[i * n_nodes_ + j] = 1;
    }
    return m;
}

std::string KnowledgeGraph::normalize_label(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (unsigned char c : raw) {
        if (std::isspace(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(char(std::tolower(c)));
    }
    return out;
}

EntityId KnowledgeGraph::add_entity(std::string_view label, std::string_view entity_type) {
    std::string key = normalize_label(label);
    if (key.empty()) {
        throw Error(ErrorCode::invalid_input, "entity label empty after normalization");
    }
    if (auto it = entity_index_.find(key); it != entity_index_.end()) {
        return it->second;
    }
    EntityId id = EntityId(entities_.size());
    entities_.push_back(Entity{id, key, std::string(entity_type)});
    entity_index_.emplace(std::move(key), id);
    out_index_.emplace_back();
    in_index_.emplace_back();
    return id;
}

RelationId KnowledgeGraph::add_relation(std::string_view name, std::string_view exclusivity_class) {
    std::string key = normalize_label(name);
    if (key.empty()) {
        throw Error(ErrorCode::invalid_input, "relation name empty after normalization");
    }
    if (auto it = relation_index_.find(key); it != relation_index_.end()) {
        return it->second;
    }
    RelationId id = RelationId(relations_.size());
    relations_.push_back(RelationType{id, key, std::string(exclusivity_class)});
    relation_index_.emplace(std::move(key), id);
    return id;
}

EdgeId KnowledgeGraph::add_edge(EntityId head, RelationId relation, EntityId tail, double confidence,
                                std::string_view provenance, EdgeStatus status) {
    check_entity(head);
    check_entity(tail);
    check_relation(relation);
    if (!(confidence >= 0.0 && confidence <= 1.0)) {
        throw Error(ErrorCode::invalid_input, "confidence outside [0, 1]");
    }
    if (head == tail && !allow_self_loops_) {
        throw Error(ErrorCode::invalid_input, "self-loop rejected: entity " + std::to_string(head));
    }

    Triple key{head, relation, tail};
    if (auto it = triple_index_.find(key); it != triple_index_.end()) {
        Edge& e = edges_[it->second];
        if (confidence > e.confidence) {
            e.confidence = confidence;
            e.provenance = std::string(provenance);
        }
        return it->second;
    }

    EdgeId id = EdgeId(edges_.size());
    edges_.push_back(Edge{head, relation, tail, confidence, std::string(provenance), status});
    triple_index_.emplace(key, id);

    auto insert_sorted = [this](std::vector<EdgeId>& list, EdgeId eid, bool by_tail) {
        auto order = [this, by_tail](EdgeId a, EdgeId b) {
            const Edge& ea = edges_[a];
            const Edge& eb = edges_[b];
            EntityId na = by_tail ? ea.tail : ea.head;
            EntityId nb = by_tail ? eb.tail : eb.head;
            if (na != nb) return na < nb;
            if (ea.relation != eb.relation) return ea.relation < eb.relation;
            return a < b;
        };
        list.insert(std::upper_bound(list.begin(), list.end(), eid, order), eid);
    };
    insert_sorted(out_index_[head], id, /*by_tail=*/true);
    insert_sorted(in_index_[tail], id, /*by_tail=*/false);
    return id;
}

bool KnowledgeGraph::has_edge(EntityId head, RelationId relation, EntityId tail) const {
    return triple_index_.contains(Triple{head, relation, tail});
}

std::optional<EdgeId> KnowledgeGraph::find_edge(EntityId head, RelationId relation, EntityId tail) const {
    auto it = triple_index_.find(Triple{head, relation, tail});
    if (it == triple_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<EntityId> KnowledgeGraph::find_entity(std::string_view label) const {
    auto it = entity_index_.find(normalize_label(label));
    if (it == entity_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<RelationId> KnowledgeGraph::find_relation(std::string_view name) const {
    auto it = relation_index_.find(normalize_label(name));
    if (it == relation_index_.end()) return std::nullopt;
    return it->second;
}

const Entity& KnowledgeGraph::entity(EntityId id) const {
    check_entity(id);
    return entities_[id];
}

const RelationType& KnowledgeGraph::relation(RelationId id) const {
    check_relation(id);
    return relations_[id];
}

const Edge& KnowledgeGraph::edge(EdgeId id) const {
    if (id >= edges_.size()) {
        throw Error(ErrorCode::not_found, "unknown edge id " + std::to_string(id));
    }
    return edges_[id];
}

std::span<const EdgeId> KnowledgeGraph::out_edges(EntityId id) const {
    check_entity(id);
    return out_index_[id];
}

std::span<const EdgeId> KnowledgeGraph::in_edges(EntityId id) const {
    check_entity(id);
    return in_index_[id];
}

GraphCounts KnowledgeGraph::counts() const {
    GraphCounts c;
    c.entities = entities_.size();
    c.edges = edges_.size();
    std::unordered_set<std::string_view> types;
    for (const auto& e : entities_) {
        if (!e.entity_type.empty()) types.insert(e.entity_type);
    }
    c.entity_types = types.size();
    c.relation_types = relations_.size();
    return c;
}

SparseAdjacency KnowledgeGraph::adjacency_view() const {
    std::vector<std::vector<EntityId>> rows(entities_.size());
    for (const auto& e : edges_) rows[e.head].push_back(e.tail);
    for (auto& row : rows) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    return SparseAdjacency(entities_.size(), std::move(rows));
}

TripleSet KnowledgeGraph::triple_set() const {
    TripleSet set;
    set.reserve(edges_.size());
    for (const auto& e : edges_) set.insert(Triple{e.head, e.relation, e.tail});
    return set;
}

void KnowledgeGraph::audit() const {
    auto fail = [](const std::string& what) {
        throw Error(ErrorCode::internal, "graph audit failed: " + what);
    };
    if (entity_index_.size() != entities_.size()) fail("entity index size");
    if (relation_index_.size() != relations_.size()) fail("relation index size");
    if (triple_index_.size() != edges_.size()) fail("triple index size");
    if (out_index_.size() != entities_.size() || in_index_.size() != entities_.size()) {
        fail("per-entity index size");
    }
    for (EdgeId id = 0; id < edges_.size(); ++id) {
        const Edge& e = edges_[id];
        auto it = triple_index_.find(Triple{e.head, e.relation, e.tail});
        if (it == triple_index_.end() || it->second != id) fail("triple index entry");
        const auto& out = out_index_[e.head];
        if (std::find(out.begin(), out.end(), id) == out.end()) fail("out index entry");
        const auto& in = in_index_[e.tail];
        if (std::find(in.begin(), in.end(), id) == in.end()) fail("in index entry");
    }
    std::size_t indexed = 0;
    for (const auto& list : out_index_) indexed += list.size();
    if (indexed != edges_.size()) fail("out index total");
    indexed = 0;
    for (const auto& list : in_index_) indexed += list.size();
    if (indexed != edges_.size()) fail("in index total");
}

void KnowledgeGraph::check_entity(EntityId id) const {
    if (id >= entities_.size()) {
        throw Error(ErrorCode::not_found, "unknown entity id " + std::to_string(id));
    }
}

void KnowledgeGraph::check_relation(RelationId id) const {
    if (id >= relations_.size()) {
        throw Error(ErrorCode::not_found, "unknown relation id " + std::to_string(id));
    }
}

KnowledgeGraph load_triples_tsv_text(std::string_view text) {
    KnowledgeGraph graph;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = (eol == std::string_view::npos)
                                    ? text.substr(pos)
                                    : text.substr(pos, eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++line_no;
        if (line.ends_with('\r')) line.remove_suffix(1);
        if (line.empty()) continue;

        std::vector<std::string_view> fields;
        std::size_t start = 0;
        while (true) {
            std::size_t tab = line.find('\t', start);
            if (tab == std::string_view::npos) {
                fields.push_back(line.substr(start));
                break;
            }
            fields.push_back(line.substr(start, tab - start));
            start = tab + 1;
        }
        if (fields.size() < 3 || fields.size() > 4) {
            throw Error(ErrorCode::parse,
                        format_line_error(line_no, "expected 3 or 4 tab-separated fields, got " +
                                                       std::to_string(fields.size())));
        }

        double confidence = 1.0;
        if (fields.size() == 4) {
            const std::string_view f = fields[3];
            auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), confidence);
            if (ec != std::errc() || ptr != f.data() + f.size()) {
                throw Error(ErrorCode::parse, format_line_error(line_no, "malformed confidence value"));
            }
            if (!(confidence >= 0.0 && confidence <= 1.0)) {
                throw Error(ErrorCode::parse, format_line_error(line_no, "confidence outside [0, 1]"));
            }
        }

        try {
            EntityId h = graph.add_entity(fields[0]);
            RelationId r = graph.add_relation(fields[1]);
            EntityId t = graph.add_entity(fields[2]);
            graph.add_edge(h, r, t, confidence);
        } catch (const Error& e) {
            throw Error(ErrorCode::parse, format_line_error(line_no, e.what()));
        }
    }
    return graph;
}

KnowledgeGraph load_triples_tsv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::io, "cannot open for reading: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw Error(ErrorCode::io, "read failure: " + path.string());
    }
    return load_triples_tsv_text(buf.str());
}

std::string save_triples_tsv_text(const KnowledgeGraph& graph) {
    std::string out;
    for (const Edge& e : graph.edges()) {
        out += graph.entity(e.head).label;
        out += '\t';
        out += graph.relation(e.relation).name;
        out += '\t';
        out += graph.entity(e.tail).label;
        out += '\t';
        out += format_double(e.confidence);
        out += '\n';
    }
    return out;
}

void save_triples_tsv(const KnowledgeGraph& graph, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::io, "cannot open for writing: " + path.string());
    }
    out << save_triples_tsv_text(graph);
    out.flush();
    if (!out) {
        throw Error(ErrorCode::io, "write failure: " + path.string());
    }
}

} // namespace kgforge
