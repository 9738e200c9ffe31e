// Drives the built kgforge binary end to end: exit codes, file outputs,
// config-file handling, determinism.

#include "kgforge/analytics.hpp"
#include "kgforge/candidates.hpp"
#include "kgforge/embedding.hpp"
#include "kgforge/graph.hpp"
#include "kgforge/rng.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>
#include <httplib.h>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <sys/wait.h>
#include <thread>

using namespace kgforge;

namespace {

struct RunResult {
    int exit_code;
    std::string output; // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(KGFORGE_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof(buf), pipe)) {
        output.append(buf, n);
    }
    int status = pclose(pipe);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return RunResult{code, std::move(output)};
}

std::string ring_tsv(std::size_t n) {
    std::string text;
    for (std::size_t i = 0; i < n; ++i) {
        text += "node" + std::to_string(i) + "\tnext\tnode" + std::to_string((i + 1) % n) + "\n";
    }
    return text;
}

std::string quoted(const std::filesystem::path& p) { return "\"" + p.string() + "\""; }

} // namespace

TEST_CASE("help lists every subcommand and exits 0") {
    auto result = run_cli("--help");
    CHECK(result.exit_code == 0);
    for (const char* sub : {"expand", "train", "evaluate", "analyze", "report"}) {
        CHECK(result.output.find(sub) != std::string::npos);
    }
    for (const char* sub : {"expand", "train", "evaluate", "analyze", "report"}) {
        auto sub_help = run_cli(std::string(sub) + " --help");
        CHECK(sub_help.exit_code == 0);
    }
    CHECK(run_cli("expand --tau 0.5 --no-such-flag").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);

    auto version = run_cli("--version");
    CHECK(version.exit_code == 0);
    CHECK(version.output.find("0.1.0") != std::string::npos);
}

TEST_CASE("expand subcommand") {
    fixtures::TempDir dir;

    SUBCASE("missing input path exits 2 with no outputs") {
        auto result = run_cli("expand --candidates " + quoted(dir.file("absent.jsonl")) +
                              " --out-report " + quoted(dir.file("report")));
        CHECK(result.exit_code == 2);
        CHECK_FALSE(std::filesystem::exists(dir.file("report.json")));
        CHECK_FALSE(std::filesystem::exists(dir.file("report.txt")));
    }
    SUBCASE("empty candidates give an all-zero-growth report") {
        fixtures::write_file(dir.file("empty.jsonl"), "");
        auto result = run_cli("expand --candidates " + quoted(dir.file("empty.jsonl")) +
                              " --out-report " + quoted(dir.file("report")));
        CHECK(result.exit_code == 0);
        auto report = nlohmann::json::parse(fixtures::read_file(dir.file("report.json")));
        CHECK(report["total_candidates"] == 0);
        CHECK(report["vertex_growth_pct"] == 0.0);
        CHECK(report["edge_growth_pct"] == 0.0);
    }
    SUBCASE("malformed candidates exit 3 with no outputs") {
        fixtures::write_file(dir.file("bad.jsonl"), "{\"head\": truncated\n");
        auto result = run_cli("expand --candidates " + quoted(dir.file("bad.jsonl")) +
                              " --out-report " + quoted(dir.file("report")));
        CHECK(result.exit_code == 3);
        CHECK_FALSE(std::filesystem::exists(dir.file("report.json")));
    }
    SUBCASE("expansion over a base graph writes graph and report") {
        fixtures::write_file(dir.file("base.tsv"), "a\tr\tb\t0.9\n");
        fixtures::write_file(
            dir.file("cands.jsonl"),
            "{\"head\":\"b\",\"relation\":\"r\",\"tail\":\"c\",\"confidence\":0.95}\n"
            "{\"head\":\"a\",\"relation\":\"r\",\"tail\":\"c\",\"confidence\":0.2}\n");
        auto result = run_cli("expand --graph " + quoted(dir.file("base.tsv")) + " --candidates " +
                              quoted(dir.file("cands.jsonl")) + " --tau 0.7 --out-graph " +
                              quoted(dir.file("out.tsv")) + " --out-report " +
                              quoted(dir.file("report")));
        CHECK(result.exit_code == 0);
        auto graph = load_triples_tsv(dir.file("out.tsv"));
        CHECK(graph.edges().size() == 2);
        CHECK(graph.entities().size() == 3);
        auto report = nlohmann::json::parse(fixtures::read_file(dir.file("report.json")));
        CHECK(report["accepted_edges"] == 1);
        CHECK(report["rejected_below_tau"] == 1);
        CHECK(report["new_entities"] == 1);
        CHECK(result.output.find("accepted_edges = 1") != std::string::npos);
    }
    SUBCASE("exclusivity rules drive the conflict policy") {
        fixtures::write_file(dir.file("base.tsv"), "a\tincreases\tb\t0.9\n");
        fixtures::write_file(
            dir.file("cands.jsonl"),
            "{\"head\":\"a\",\"relation\":\"decreases\",\"tail\":\"b\",\"confidence\":0.95}\n");
        auto common = "expand --graph " + quoted(dir.file("base.tsv")) + " --candidates " +
                      quoted(dir.file("cands.jsonl")) +
                      " --exclusivity \"increases|decreases\" --out-report ";

        CHECK(run_cli(common + quoted(dir.file("flagged")) + " --conflict-policy flag").exit_code ==
              0);
        auto flagged = nlohmann::json::parse(fixtures::read_file(dir.file("flagged.json")));
        CHECK(flagged["conflicts_detected"] == 1);
        CHECK(flagged["e_after"] == 2);
        CHECK(flagged["conflict_rate_pct"] == 100.0);

        CHECK(run_cli(common + quoted(dir.file("dropped")) + " --conflict-policy reject")
                  .exit_code == 0);
        auto dropped = nlohmann::json::parse(fixtures::read_file(dir.file("dropped.json")));
        CHECK(dropped["conflicts_rejected"] == 1);
        CHECK(dropped["e_after"] == 1);

        CHECK(run_cli(common + quoted(dir.file("x")) + " --conflict-policy maybe").exit_code == 2);
    }
    SUBCASE("two-point confidence law through the synthetic source") {
        auto result = run_cli(
            "expand --source synthetic --seed 5 --synth-entities 8 --synth-candidates 60 "
            "--synth-law two_point --synth-p-low 0.2 --synth-p-high 0.9 --synth-mix 0.5 "
            "--tau 0.5 --out-report " + quoted(dir.file("tp")));
        CHECK(result.exit_code == 0);
        auto report = nlohmann::json::parse(fixtures::read_file(dir.file("tp.json")));
        // only the 0.9-level candidates clear tau
        CHECK(report["rejected_below_tau"].get<int>() > 0);
        CHECK(report["accepted_edges"].get<int>() + report["merged_candidates"].get<int>() +
                  report["rejected_below_tau"].get<int>() ==
              60);
    }
    SUBCASE("synthetic source is seed-deterministic") {
        auto args = std::string("expand --source synthetic --seed 11 --synth-entities 12 ") +
                    "--synth-candidates 40 --tau 0.3 --out-graph ";
        CHECK(run_cli(args + quoted(dir.file("a.tsv")) + " --out-report " + quoted(dir.file("ra"))).exit_code ==
              0);
        CHECK(run_cli(args + quoted(dir.file("b.tsv")) + " --out-report " + quoted(dir.file("rb"))).exit_code ==
              0);
        CHECK(fixtures::read_file(dir.file("a.tsv")) == fixtures::read_file(dir.file("b.tsv")));
        CHECK(fixtures::read_file(dir.file("ra.json")) == fixtures::read_file(dir.file("rb.json")));
    }
    SUBCASE("unwritable output directory exits 4, leaving nothing behind") {
        fixtures::write_file(dir.file("empty.jsonl"), "");
        auto result = run_cli("expand --candidates " + quoted(dir.file("empty.jsonl")) +
                              " --out-report " + quoted(dir.path() / "no_dir" / "report"));
        CHECK(result.exit_code == 4);
        CHECK_FALSE(std::filesystem::exists(dir.path() / "no_dir"));
    }
}

TEST_CASE("expand reproduces the large-fixture growth figures") {
    fixtures::TempDir dir;
    // 3426-node / 5526-edge base plus candidates bringing 724 entities and
    // 1764 edges above threshold
    save_triples_tsv(fixtures::counts_graph(3426, 5526, 11, 20), dir.file("base.tsv"));
    fixtures::write_file(dir.file("growth.jsonl"),
                         serialize_candidates(fixtures::growth_batch()));

    auto result = run_cli("expand --graph " + quoted(dir.file("base.tsv")) + " --candidates " +
                          quoted(dir.file("growth.jsonl")) + " --tau 0.7 --out-graph " +
                          quoted(dir.file("expanded.tsv")) + " --out-report " +
                          quoted(dir.file("report")));
    CHECK(result.exit_code == 0);
    auto report = nlohmann::json::parse(fixtures::read_file(dir.file("report.json")));
    CHECK(report["v_before"] == 3426);
    CHECK(report["v_after"] == 4150);
    CHECK(report["e_before"] == 5526);
    CHECK(report["e_after"] == 7290);
    CHECK(std::abs(report["vertex_growth_pct"].get<double>() - 21.13) <= 0.01);
    CHECK(std::abs(report["edge_growth_pct"].get<double>() - 31.92) <= 0.01);
}

TEST_CASE("expand pulls candidates from an HTTP extraction endpoint") {
    fixtures::TempDir dir;
    httplib::Server server;
    std::string seen_body;
    server.Post("/extract", [&](const httplib::Request& req, httplib::Response& res) {
        seen_body = req.body;
        res.set_content(
            "{\"head\":\"stroke\",\"relation\":\"treated_by\",\"tail\":\"thrombolysis\","
            "\"confidence\":0.92}\n",
            "application/jsonl");
    });
    int port = server.bind_to_any_port("127.0.0.1");
    std::thread listener([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    fixtures::write_file(dir.file("docs.txt"), "Stroke is treated by thrombolysis.\n");
    auto result = run_cli("expand --source http --endpoint http://127.0.0.1:" +
                          std::to_string(port) + "/extract --documents " +
                          quoted(dir.file("docs.txt")) + " --tau 0.7 --out-graph " +
                          quoted(dir.file("out.tsv")) + " --out-report " + quoted(dir.file("rep")));
    server.stop();
    listener.join();
    CHECK(result.exit_code == 0);
    CHECK(seen_body.find("documents") != std::string::npos);
    auto graph = load_triples_tsv(dir.file("out.tsv"));
    CHECK(graph.edges().size() == 1);
    CHECK(graph.find_entity("thrombolysis").has_value());

    // unreachable endpoint maps to the I/O exit code
    auto down = run_cli("expand --source http --endpoint http://127.0.0.1:59999/extract " +
                        std::string("--http-retries 1 --http-timeout-ms 300 --out-report ") +
                        quoted(dir.file("r2")));
    CHECK(down.exit_code == 4);
}

TEST_CASE("train subcommand") {
    fixtures::TempDir dir;
    fixtures::write_file(dir.file("ring.tsv"), ring_tsv(10));

    SUBCASE("zero epochs equal a fresh init for the same seed") {
        auto result = run_cli("train --triples " + quoted(dir.file("ring.tsv")) +
                              " --model transe --dim 8 --epochs 0 --seed 31 --checkpoint " +
                              quoted(dir.file("model.kgm")));
        CHECK(result.exit_code == 0);
        auto trained = EmbeddingModel::load(dir.file("model.kgm"));
        auto fresh = EmbeddingModel::init(ModelKind::transe, 8, 10, 1, 31);
        CHECK(trained == fresh);
    }
    SUBCASE("same seed, single thread: byte-identical checkpoints and traces") {
        auto args = std::string("train --triples ") + quoted(dir.file("ring.tsv")) +
                    " --model transe --dim 8 --epochs 20 --seed 5 --threads 1";
        CHECK(run_cli(args + " --checkpoint " + quoted(dir.file("m1.kgm")) + " --loss-trace " +
                      quoted(dir.file("l1.csv")))
                  .exit_code == 0);
        CHECK(run_cli(args + " --checkpoint " + quoted(dir.file("m2.kgm")) + " --loss-trace " +
                      quoted(dir.file("l2.csv")))
                  .exit_code == 0);
        CHECK(fixtures::read_file(dir.file("m1.kgm")) == fixtures::read_file(dir.file("m2.kgm")));
        CHECK(fixtures::read_file(dir.file("l1.csv")) == fixtures::read_file(dir.file("l2.csv")));
    }
    SUBCASE("loss trace has exactly one row per epoch") {
        CHECK(run_cli("train --triples " + quoted(dir.file("ring.tsv")) +
                      " --model distmult --dim 4 --epochs 7 --checkpoint " +
                      quoted(dir.file("m.kgm")) + " --loss-trace " + quoted(dir.file("loss.csv")))
                  .exit_code == 0);
        std::string csv = fixtures::read_file(dir.file("loss.csv"));
        std::size_t rows = 0;
        for (char c : csv) {
            if (c == '\n') ++rows;
        }
        CHECK(rows == 7);
    }
    SUBCASE("non-finite loss exits 5") {
        auto result = run_cli("train --triples " + quoted(dir.file("ring.tsv")) +
                              " --model distmult --dim 8 --epochs 50 --learning-rate 1e15 " +
                              "--checkpoint " + quoted(dir.file("m.kgm")));
        CHECK(result.exit_code == 5);
        CHECK_FALSE(std::filesystem::exists(dir.file("m.kgm")));
    }
    SUBCASE("missing triples file exits 2") {
        CHECK(run_cli("train --triples " + quoted(dir.file("none.tsv")) + " --checkpoint " +
                      quoted(dir.file("m.kgm")))
                  .exit_code == 2);
    }
}

TEST_CASE("evaluate subcommand") {
    fixtures::TempDir dir;
    fixtures::write_file(dir.file("ring5.tsv"), ring_tsv(5));

    // RotatE dim 1 places the five entities on the unit circle with the
    // relation rotating by exactly one step, so every query ranks 1.
    auto model = EmbeddingModel::init(ModelKind::rotate, 1, 5, 1, 0);
    for (EntityId i = 0; i < 5; ++i) {
        double angle = 2.0 * std::numbers::pi * double(i) / 5.0;
        model.entity_row(i)[0] = std::cos(angle);
        model.entity_row(i)[1] = std::sin(angle);
    }
    model.relation_row(0)[0] = 2.0 * std::numbers::pi / 5.0;
    model.save(dir.file("perfect.kgm"));

    SUBCASE("perfect model scores a clean sweep in the exact column layout") {
        auto result = run_cli("evaluate --checkpoint " + quoted(dir.file("perfect.kgm")) +
                              " --train " + quoted(dir.file("ring5.tsv")) + " --test " +
                              quoted(dir.file("ring5.tsv")) + " --dataset ring5 --out-metrics " +
                              quoted(dir.file("metrics")));
        CHECK(result.exit_code == 0);
        std::string golden =
            fixtures::read_file(std::string(KGFORGE_GOLDEN_DIR) + "/metrics_perfect.tsv");
        CHECK(fixtures::read_file(dir.file("metrics.tsv")) == golden);
        auto json = nlohmann::json::parse(fixtures::read_file(dir.file("metrics.json")));
        CHECK(json["MRR"] == 1.0);
        CHECK(json["n_queries"] == 10);
        CHECK(json["skipped_queries"] == 0);
    }
    SUBCASE("ranking thread count never changes the metrics") {
        REQUIRE(run_cli("evaluate --checkpoint " + quoted(dir.file("perfect.kgm")) + " --train " +
                        quoted(dir.file("ring5.tsv")) + " --test " + quoted(dir.file("ring5.tsv")) +
                        " --threads 1 --out-metrics " + quoted(dir.file("m1")))
                    .exit_code == 0);
        REQUIRE(run_cli("evaluate --checkpoint " + quoted(dir.file("perfect.kgm")) + " --train " +
                        quoted(dir.file("ring5.tsv")) + " --test " + quoted(dir.file("ring5.tsv")) +
                        " --threads 4 --out-metrics " + quoted(dir.file("m4")))
                    .exit_code == 0);
        CHECK(fixtures::read_file(dir.file("m1.tsv")) == fixtures::read_file(dir.file("m4.tsv")));
        CHECK(fixtures::read_file(dir.file("m1.json")) == fixtures::read_file(dir.file("m4.json")));
    }
    SUBCASE("test triples over unseen entities are skipped and counted") {
        fixtures::write_file(dir.file("test.tsv"),
                             "node0\tnext\tnode1\nmartian\tnext\tnode2\n");
        auto result = run_cli("evaluate --checkpoint " + quoted(dir.file("perfect.kgm")) +
                              " --train " + quoted(dir.file("ring5.tsv")) + " --test " +
                              quoted(dir.file("test.tsv")) + " --out-metrics " +
                              quoted(dir.file("metrics")));
        CHECK(result.exit_code == 0);
        auto json = nlohmann::json::parse(fixtures::read_file(dir.file("metrics.json")));
        CHECK(json["n_queries"] == 2);
        CHECK(json["skipped_queries"] == 2);
    }
    SUBCASE("trained ring model clears the learnability bar end to end") {
        fixtures::write_file(dir.file("ring50.tsv"), ring_tsv(50));
        REQUIRE(run_cli("train --triples " + quoted(dir.file("ring50.tsv")) +
                        " --model transe --norm l1 --dim 16 --epochs 200 --batch-size 1" +
                        " --learning-rate 0.3 --margin 0.25 --negatives 15 --seed 8" +
                        " --checkpoint " + quoted(dir.file("ring.kgm")))
                    .exit_code == 0);
        auto result = run_cli("evaluate --checkpoint " + quoted(dir.file("ring.kgm")) +
                              " --train " + quoted(dir.file("ring50.tsv")) + " --test " +
                              quoted(dir.file("ring50.tsv")) + " --dataset ring --out-metrics " +
                              quoted(dir.file("ringmetrics")));
        CHECK(result.exit_code == 0);
        auto json = nlohmann::json::parse(fixtures::read_file(dir.file("ringmetrics.json")));
        CHECK(json["MRR"].get<double>() >= 0.8);
        CHECK(json["P@1"].get<double>() >= 0.6);
    }
    SUBCASE("the valid split joins the filter set") {
        // ids follow first appearance in the train TSV: e0..e4
        fixtures::write_file(dir.file("train.tsv"),
                             "e0\tr\te1\ne1\tr\te2\ne2\tr\te3\ne3\tr\te4\n");
        fixtures::write_file(dir.file("test.tsv"), "e2\tr\te3\n");
        // (e2, r, e0) and (e4, r, e3) outscore the truth on their sides; with
        // them in valid they are filtered and both queries rank 1
        fixtures::write_file(dir.file("valid.tsv"), "e2\tr\te0\ne4\tr\te3\n");

        // signed two-channel model: entity i = (v, s*v), relation = (1, -1),
        // so score = v_h * v_t * (1 - s_h * s_t): zero for same-sign pairs
        // (self-loops included), 2 * v_h * v_t across signs
        auto model = EmbeddingModel::init(ModelKind::distmult, 2, 5, 1, 0);
        const double value[] = {20.0, 0.5, 3.0, 5.0, 9.0};
        const double sign[] = {-1.0, 1.0, 1.0, -1.0, 1.0};
        for (EntityId i = 0; i < 5; ++i) {
            model.entity_row(i)[0] = value[i];
            model.entity_row(i)[1] = sign[i] * value[i];
        }
        model.relation_row(0)[0] = 1.0;
        model.relation_row(0)[1] = -1.0;
        model.save(dir.file("signed.kgm"));

        auto base = "evaluate --checkpoint " + quoted(dir.file("signed.kgm")) + " --train " +
                    quoted(dir.file("train.tsv")) + " --test " + quoted(dir.file("test.tsv"));
        REQUIRE(run_cli(base + " --out-metrics " + quoted(dir.file("raw"))).exit_code == 0);
        auto raw = nlohmann::json::parse(fixtures::read_file(dir.file("raw.json")));
        CHECK(raw["MRR"] == 0.5); // both queries rank 2

        REQUIRE(run_cli(base + " --valid " + quoted(dir.file("valid.tsv")) + " --out-metrics " +
                        quoted(dir.file("filtered")))
                    .exit_code == 0);
        auto filtered = nlohmann::json::parse(fixtures::read_file(dir.file("filtered.json")));
        CHECK(filtered["MRR"] == 1.0);
    }
    SUBCASE("checkpoint/graph mismatch is a config error") {
        fixtures::write_file(dir.file("other.tsv"), ring_tsv(7));
        CHECK(run_cli("evaluate --checkpoint " + quoted(dir.file("perfect.kgm")) + " --train " +
                      quoted(dir.file("other.tsv")) + " --test " + quoted(dir.file("other.tsv")) +
                      " --out-metrics " + quoted(dir.file("metrics")))
                  .exit_code == 2);
    }
}

TEST_CASE("analyze subcommand") {
    fixtures::TempDir dir;

    SUBCASE("triangle fixture matches the golden row") {
        fixtures::write_file(dir.file("k3.tsv"), "a\tto\tb\nb\tto\tc\nc\tto\ta\n");
        auto result = run_cli("analyze --graph " + quoted(dir.file("k3.tsv")) +
                              " --name triangle --out-report " + quoted(dir.file("net")) +
                              " --edge-list " + quoted(dir.file("edges.tsv")));
        CHECK(result.exit_code == 0);
        std::string golden =
            fixtures::read_file(std::string(KGFORGE_GOLDEN_DIR) + "/analyze_k3.tsv");
        CHECK(fixtures::read_file(dir.file("net.tsv")) == golden);
        CHECK(fixtures::read_file(dir.file("edges.tsv")) == "0\t1\n0\t2\n1\t2\n");
    }
    SUBCASE("random 50-node graph matches the library values") {
        Rng rng(404);
        auto g = oracles::random_graph(rng, 50, 3, 120);
        save_triples_tsv(g, dir.file("rand.tsv"));
        auto result = run_cli("analyze --graph " + quoted(dir.file("rand.tsv")) +
                              " --name rand --threads 4 --out-report " + quoted(dir.file("net")));
        CHECK(result.exit_code == 0);
        auto json = nlohmann::json::parse(fixtures::read_file(dir.file("net.json")));

        // oracle: same metrics straight from the library on the same file
        auto reloaded = load_triples_tsv(dir.file("rand.tsv"));
        auto expected = network_report(reloaded);
        CHECK(json["n_nodes"] == expected.n_nodes);
        CHECK(json["n_edges"] == expected.n_edges);
        CHECK(json["density"] == expected.density);
        CHECK(json["avg_clustering"] == expected.avg_clustering);
        CHECK(json["diameter"] == expected.diameter);
        CHECK(json["lcc_size"] == expected.lcc_size);
    }
    SUBCASE("path of 10: clustering 0, diameter 9") {
        std::string path_tsv;
        for (int i = 0; i + 1 < 10; ++i) {
            path_tsv += "p" + std::to_string(i) + "\tto\tp" + std::to_string(i + 1) + "\n";
        }
        fixtures::write_file(dir.file("path.tsv"), path_tsv);
        auto result = run_cli("analyze --graph " + quoted(dir.file("path.tsv")) +
                              " --name path10 --out-report " + quoted(dir.file("net")));
        CHECK(result.exit_code == 0);
        auto json = nlohmann::json::parse(fixtures::read_file(dir.file("net.json")));
        CHECK(json["avg_clustering"] == 0.0);
        CHECK(json["diameter"] == 9);
    }
}

TEST_CASE("report subcommand merges prior outputs") {
    fixtures::TempDir dir;
    fixtures::write_file(dir.file("empty.jsonl"), "");
    fixtures::write_file(dir.file("k3.tsv"), "a\tto\tb\nb\tto\tc\nc\tto\ta\n");
    REQUIRE(run_cli("expand --candidates " + quoted(dir.file("empty.jsonl")) + " --graph " +
                    quoted(dir.file("k3.tsv")) + " --out-report " + quoted(dir.file("exp")))
                .exit_code == 0);
    REQUIRE(run_cli("analyze --graph " + quoted(dir.file("k3.tsv")) + " --name k3 --out-report " +
                    quoted(dir.file("net")))
                .exit_code == 0);

    auto result = run_cli("report --expansion " + quoted(dir.file("exp.json")) + " --network " +
                          quoted(dir.file("net.json")) + " --out " + quoted(dir.file("combined")));
    CHECK(result.exit_code == 0);
    auto combined = nlohmann::json::parse(fixtures::read_file(dir.file("combined.json")));
    CHECK(combined["expansion"]["total_candidates"] == 0);
    CHECK(combined["network"]["diameter"] == 1);
    CHECK(combined["ranking"].is_null());
    std::string text = fixtures::read_file(dir.file("combined.txt"));
    CHECK(text.find("[expansion]") != std::string::npos);
    CHECK(text.find("[network]") != std::string::npos);

    CHECK(run_cli("report --out " + quoted(dir.file("x"))).exit_code == 2);
}

TEST_CASE("config file drives subcommands; flags override") {
    fixtures::TempDir dir;
    fixtures::write_file(
        dir.file("cands.jsonl"),
        "{\"head\":\"a\",\"relation\":\"r\",\"tail\":\"b\",\"confidence\":0.5}\n");
    fixtures::write_file(dir.file("run.cfg"), "# pipeline config\n"
                                              "[expand]\n"
                                              "candidates = " +
                                                  dir.file("cands.jsonl").string() +
                                                  "\n"
                                                  "tau = 0.4\n"
                                                  "out_report = " +
                                                  dir.file("report").string() + "\n");

    SUBCASE("config-only run accepts the 0.5-confidence candidate") {
        auto result = run_cli("--config " + quoted(dir.file("run.cfg")) + " expand");
        CHECK(result.exit_code == 0);
        auto report = nlohmann::json::parse(fixtures::read_file(dir.file("report.json")));
        CHECK(report["accepted_edges"] == 1);
    }
    SUBCASE("a flag overrides the file value") {
        auto result = run_cli("--config " + quoted(dir.file("run.cfg")) + " expand --tau 0.9");
        CHECK(result.exit_code == 0);
        auto report = nlohmann::json::parse(fixtures::read_file(dir.file("report.json")));
        CHECK(report["accepted_edges"] == 0);
        CHECK(report["rejected_below_tau"] == 1);
    }
    SUBCASE("unknown keys and malformed lines are config errors") {
        fixtures::write_file(dir.file("bad.cfg"), "[expand]\nnot_a_key = 1\n");
        CHECK(run_cli("--config " + quoted(dir.file("bad.cfg")) + " expand").exit_code == 2);
        fixtures::write_file(dir.file("bad2.cfg"), "[expand]\njust text\n");
        CHECK(run_cli("--config " + quoted(dir.file("bad2.cfg")) + " expand").exit_code == 2);
        CHECK(run_cli("--config " + quoted(dir.file("missing.cfg")) + " expand").exit_code == 2);
    }
}
