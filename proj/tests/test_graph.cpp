#include "kgforge/graph.hpp"
#include "kgforge/rng.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <map>
#include <set>
#include <tuple>

using namespace kgforge;

TEST_CASE("entity insertion is idempotent on normalized labels") {
    KnowledgeGraph g;
    CHECK(g.add_entity("Stroke", "Disease") == 0);
    CHECK(g.add_entity("Stroke", "Disease") == 0);
    CHECK(g.entities().size() == 1);

    CHECK(g.add_entity("stroke") == 0);
    CHECK(g.add_entity("  STROKE ") == 0);
    CHECK(g.add_entity("st\t roke") == 1); // internal whitespace collapses to one space
    CHECK(g.entity(1).label == "st roke");
}

TEST_CASE("empty-after-normalization labels are rejected") {
    KnowledgeGraph g;
    CHECK_THROWS_AS(g.add_entity("   "), Error);
    CHECK_THROWS_AS(g.add_relation(""), Error);
    try {
        g.add_entity(" \t ");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::invalid_input);
    }
}

TEST_CASE("thousands of distinct labels intern cleanly") {
    KnowledgeGraph g;
    for (std::size_t i = 0; i < 3426; ++i) {
        g.add_entity("term " + std::to_string(i));
    }
    CHECK(g.entities().size() == 3426);
}

TEST_CASE("edge insertion max-merges duplicates") {
    KnowledgeGraph g;
    auto a = g.add_entity("a");
    auto b = g.add_entity("b");
    auto r = g.add_relation("r");
    EdgeId e1 = g.add_edge(a, r, b, 0.9, "doc1");
    EdgeId e2 = g.add_edge(a, r, b, 0.6, "doc2");
    CHECK(e1 == e2);
    CHECK(g.edges().size() == 1);
    CHECK(g.edge(e1).confidence == 0.9);
    CHECK(g.edge(e1).provenance == "doc1"); // weaker evidence does not replace

    g.add_edge(a, r, b, 0.95, "doc3");
    CHECK(g.edge(e1).confidence == 0.95);
    CHECK(g.edge(e1).provenance == "doc3");
}

TEST_CASE("self-loops are rejected by default and allowed by config") {
    KnowledgeGraph g;
    auto a = g.add_entity("a");
    auto r = g.add_relation("r");
    CHECK_THROWS_AS(g.add_edge(a, r, a, 0.5), Error);

    KnowledgeGraph loops(/*allow_self_loops=*/true);
    auto b = loops.add_entity("b");
    auto r2 = loops.add_relation("r");
    CHECK_NOTHROW(loops.add_edge(b, r2, b, 0.5));
}

TEST_CASE("edge preconditions: ids and confidence range") {
    KnowledgeGraph g;
    auto a = g.add_entity("a");
    auto b = g.add_entity("b");
    auto r = g.add_relation("r");
    CHECK_THROWS_AS(g.add_edge(a, r, 99, 0.5), Error);
    CHECK_THROWS_AS(g.add_edge(99, r, b, 0.5), Error);
    CHECK_THROWS_AS(g.add_edge(a, 7, b, 0.5), Error);
    CHECK_THROWS_AS(g.add_edge(a, r, b, 1.5), Error);
    CHECK_THROWS_AS(g.add_edge(a, r, b, -0.1), Error);
    try {
        g.add_edge(a, r, 99, 0.5);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::not_found);
    }
}

TEST_CASE("has_edge: empty graph, directedness") {
    KnowledgeGraph g;
    CHECK_FALSE(g.has_edge(0, 0, 1));
    auto a = g.add_entity("a");
    auto b = g.add_entity("b");
    auto r = g.add_relation("r");
    g.add_edge(a, r, b, 1.0);
    CHECK(g.has_edge(a, r, b));
    CHECK_FALSE(g.has_edge(b, r, a));
}

TEST_CASE("has_edge agrees with a linear scan on a random graph") {
    Rng rng(42);
    KnowledgeGraph g = oracles::random_graph(rng, 10, 3, 50);
    for (EntityId h = 0; h < 10; ++h) {
        for (EntityId t = 0; t < 10; ++t) {
            for (RelationId r = 0; r < 3; ++r) {
                bool scan = false;
                for (const Edge& e : g.edges()) {
                    if (e.head == h && e.relation == r && e.tail == t) scan = true;
                }
                CHECK(g.has_edge(h, r, t) == scan);
            }
        }
    }
}

TEST_CASE("adjacency view") {
    SUBCASE("empty graph is all zero") {
        KnowledgeGraph g;
        auto view = g.adjacency_view();
        CHECK(view.nonzero_count() == 0);
    }
    SUBCASE("single edge") {
        KnowledgeGraph g;
        auto a = g.add_entity("a");
        auto b = g.add_entity("b");
        auto r = g.add_relation("r");
        g.add_edge(a, r, b, 1.0);
        auto view = g.adjacency_view();
        CHECK(view.nonzero_count() == 1);
        CHECK(view.at(a, b));
        CHECK_FALSE(view.at(b, a));
        auto dense = view.dense();
        CHECK(dense[a * 2 + b] == 1);
        CHECK(dense[b * 2 + a] == 0);
    }
    SUBCASE("random graph matches dense reconstruction and has_edge") {
        Rng rng(7);
        KnowledgeGraph g = oracles::random_graph(rng, 50, 4, 120);
        auto view = g.adjacency_view();

        // dense oracle by exhaustive scan of the edge table
        std::vector<std::uint8_t> dense_oracle(50 * 50, 0);
        std::set<std::pair<EntityId, EntityId>> pairs;
        for (const Edge& e : g.edges()) {
            dense_oracle[e.head * 50 + e.tail] = 1;
            pairs.emplace(e.head, e.tail);
        }
        CHECK(view.nonzero_count() == pairs.size());
        CHECK(view.dense() == dense_oracle);
        for (EntityId i = 0; i < 50; ++i) {
            for (EntityId j = 0; j < 50; ++j) {
                bool any = false;
                for (RelationId r = 0; r < 4; ++r) any = any || g.has_edge(i, r, j);
                CHECK(view.at(i, j) == any);
            }
        }
    }
    SUBCASE("dense view is refused above the node limit") {
        KnowledgeGraph g;
        for (int i = 0; i < 11; ++i) g.add_entity("e" + std::to_string(i));
        auto view = g.adjacency_view();
        CHECK_THROWS_AS(view.dense(/*node_limit=*/10), Error);
        CHECK(view.dense(11).size() == 121);
    }
}

TEST_CASE("counts") {
    SUBCASE("empty graph") {
        KnowledgeGraph g;
        auto c = g.counts();
        CHECK(c.entities == 0);
        CHECK(c.edges == 0);
        CHECK(c.entity_types == 0);
        CHECK(c.relation_types == 0);
    }
    SUBCASE("large base fixture") {
        auto g = fixtures::counts_graph(3426, 5526, 11, 20);
        auto c = g.counts();
        CHECK(c.entities == 3426);
        CHECK(c.edges == 5526);
        CHECK(c.entity_types == 11);
        CHECK(c.relation_types == 20);
    }
    SUBCASE("large expanded fixture") {
        auto g = fixtures::counts_graph(4150, 7290, 14, 24);
        auto c = g.counts();
        CHECK(c.entities == 4150);
        CHECK(c.edges == 7290);
        CHECK(c.entity_types == 14);
        CHECK(c.relation_types == 24);
    }
}

TEST_CASE("TSV load/save") {
    SUBCASE("empty file gives an empty graph") {
        auto g = load_triples_tsv_text("");
        CHECK(g.entities().empty());
        CHECK(g.edges().empty());
    }
    SUBCASE("three-line fixture") {
        auto g = load_triples_tsv(std::string(KGFORGE_FIXTURES_DIR) + "/three_triples.tsv");
        CHECK(g.entities().size() <= 6);
        CHECK(g.edges().size() == 3);
        CHECK(g.find_entity("stroke").has_value());
        auto r = g.find_relation("treated_by");
        REQUIRE(r.has_value());
        auto e = g.find_edge(*g.find_entity("stroke"), *r, *g.find_entity("thrombolysis"));
        REQUIRE(e.has_value());
        CHECK(g.edge(*e).confidence == 0.92);
        // missing confidence column defaults to 1.0
        auto r2 = g.find_relation("associated_with");
        REQUIRE(r2.has_value());
        auto e2 = g.find_edge(*g.find_entity("stroke"), *r2, *g.find_entity("apoe4"));
        REQUIRE(e2.has_value());
        CHECK(g.edge(*e2).confidence == 1.0);

        std::string text = save_triples_tsv_text(g);
        auto reloaded = load_triples_tsv_text(text);
        CHECK(oracles::label_graph_of(reloaded).edges == oracles::label_graph_of(g).edges);
        CHECK(reloaded.counts().entities == g.counts().entities);
    }
    SUBCASE("FB15k-237-format sample loads") {
        auto g = load_triples_tsv(std::string(KGFORGE_FIXTURES_DIR) + "/fb15k237_sample.tsv");
        CHECK(g.edges().size() == 1000);
        CHECK(g.relations().size() == 12);
    }
    SUBCASE("malformed line reports its number") {
        try {
            load_triples_tsv(std::string(KGFORGE_FIXTURES_DIR) + "/bad_line.tsv");
            FAIL("expected parse error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::parse);
            CHECK(std::string(e.what()).find("line 2") != std::string::npos);
        }
    }
    SUBCASE("out-of-range confidence is a parse error") {
        CHECK_THROWS_AS(load_triples_tsv_text("a\tr\tb\t1.25\n"), Error);
        CHECK_THROWS_AS(load_triples_tsv_text("a\tr\tb\tnope\n"), Error);
    }
    SUBCASE("duplicate triples merge on load") {
        auto g = load_triples_tsv_text("a\tr\tb\t0.3\na\tr\tb\t0.8\na\tr\tb\t0.5\n");
        CHECK(g.edges().size() == 1);
        CHECK(g.edges()[0].confidence == 0.8);
    }
    SUBCASE("missing file is an io error") {
        try {
            load_triples_tsv("/nonexistent/kgforge.tsv");
            FAIL("expected io error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::io);
        }
    }
}

TEST_CASE("round-trip fidelity on random graphs") {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
        Rng rng(seed);
        KnowledgeGraph g = oracles::random_graph(rng, 2 + rng.below(29), 1 + rng.below(4),
                                                 rng.below(80));
        auto text = save_triples_tsv_text(g);
        auto back = load_triples_tsv_text(text);
        auto lg = oracles::label_graph_of(g);
        auto lb = oracles::label_graph_of(back);
        CHECK(lg.edges == lb.edges);
        CHECK(back.edges().size() == g.edges().size());
        // entity count can legitimately differ: isolated entities have no TSV row
        for (const Edge& e : back.edges()) {
            auto original = g.find_edge(*g.find_entity(back.entity(e.head).label),
                                        *g.find_relation(back.relation(e.relation).name),
                                        *g.find_entity(back.entity(e.tail).label));
            REQUIRE(original.has_value());
            CHECK(g.edge(*original).confidence == e.confidence);
        }
    }
}

TEST_CASE("max-merge monotonicity and audit under random mutation") {
    Rng rng(99);
    KnowledgeGraph g;
    for (int i = 0; i < 8; ++i) g.add_entity("e" + std::to_string(i));
    for (int r = 0; r < 2; ++r) g.add_relation("r" + std::to_string(r));

    std::map<std::tuple<EntityId, RelationId, EntityId>, double> max_seen;
    for (int step = 0; step < 500; ++step) {
        auto h = EntityId(rng.below(8));
        auto t = EntityId(rng.below(7));
        if (t >= h) ++t;
        auto r = RelationId(rng.below(2));
        double conf = rng.canonical();
        g.add_edge(h, r, t, conf);
        auto key = std::make_tuple(h, r, t);
        auto it = max_seen.find(key);
        max_seen[key] = it == max_seen.end() ? conf : std::max(it->second, conf);
    }
    CHECK(g.edges().size() == max_seen.size());
    for (const Edge& e : g.edges()) {
        CHECK(e.confidence == max_seen.at(std::make_tuple(e.head, e.relation, e.tail)));
    }
    CHECK_NOTHROW(g.audit());
}

TEST_CASE("out/in indices are consistent") {
    Rng rng(3);
    KnowledgeGraph g = oracles::random_graph(rng, 12, 3, 60);
    g.audit();
    for (const Entity& entity : g.entities()) {
        for (EdgeId id : g.out_edges(entity.id)) {
            CHECK(g.edge(id).head == entity.id);
        }
        for (EdgeId id : g.in_edges(entity.id)) {
            CHECK(g.edge(id).tail == entity.id);
        }
    }
}
