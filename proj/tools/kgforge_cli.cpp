// kgforge command line: ingest -> expand -> train -> evaluate -> analyze ->
// report, driven by flags and/or a flat key-value config file with one
// section per subcommand. Flags override file values; config keys are the
// flag names with dashes replaced by underscores.
//
// Exit codes: 0 success, 2 config error, 3 parse error, 4 I/O error,
// 5 non-finite training loss.

#include "kgforge.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitParse = 3;
constexpr int kExitIo = 4;
constexpr int kExitDiverged = 5;

int exit_code_for(kgf_status status) {
    switch (status) {
    case KGF_OK: return kExitOk;
    case KGF_ERR_PARSE: return kExitParse;
    case KGF_ERR_IO: return kExitIo;
    case KGF_ERR_ENDPOINT:
    case KGF_ERR_TRANSPORT: return kExitIo;
    case KGF_ERR_TRAIN_DIVERGED: return kExitDiverged;
    default: return kExitConfig;
    }
}

// Exceptions carrying the final exit code.
struct CliError {
    int code;
    std::string message;
};

[[noreturn]] void fail(int code, const std::string& message) { throw CliError{code, message}; }

[[noreturn]] void fail_status(kgf_status status, const std::string& context) {
    fail(exit_code_for(status), context + ": " + kgf_last_error());
}

void require_input_file(const std::string& path, const char* what) {
    if (!fs::exists(fs::path(path))) {
        fail(kExitConfig, std::string(what) + " does not exist: " + path);
    }
}

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

// RAII for strings handed out by the C API.
using CString = std::unique_ptr<char, decltype(&kgf_string_free)>;

CString take(char* s) { return CString(s, &kgf_string_free); }

struct GraphDeleter {
    void operator()(kgf_graph* g) const { kgf_graph_free(g); }
};
struct BatchDeleter {
    void operator()(kgf_batch* b) const { kgf_batch_free(b); }
};
struct ModelDeleter {
    void operator()(kgf_model* m) const { kgf_model_free(m); }
};
using GraphPtr = std::unique_ptr<kgf_graph, GraphDeleter>;
using BatchPtr = std::unique_ptr<kgf_batch, BatchDeleter>;
using ModelPtr = std::unique_ptr<kgf_model, ModelDeleter>;

// All outputs of a subcommand are staged first and renamed into place
// together, so a failing run leaves no partial files behind.
class OutputStage {
public:
    void add(const fs::path& path, std::string content) {
        staged_.push_back({path, std::move(content)});
    }

    void commit() {
        std::vector<fs::path> temps;
        temps.reserve(staged_.size());
        for (const auto& [path, content] : staged_) {
            fs::path tmp = path;
            tmp += ".tmp";
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out || !(out << content) || !out.flush()) {
                out.close();
                temps.push_back(tmp);
                for (const fs::path& t : temps) {
                    std::error_code ec;
                    fs::remove(t, ec);
                }
                fail(kExitIo, "cannot write " + tmp.string());
            }
            out.close();
            temps.push_back(tmp);
        }
        for (std::size_t i = 0; i < staged_.size(); ++i) {
            std::error_code ec;
            fs::rename(temps[i], staged_[i].first, ec);
            if (ec) fail(kExitIo, "cannot rename into place: " + staged_[i].first.string());
        }
    }

private:
    std::vector<std::pair<fs::path, std::string>> staged_;
};

// ---- flat key-value config file --------------------------------------------

using ConfigSection = std::map<std::string, std::string>;
using ConfigFile = std::map<std::string, ConfigSection>;

std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

ConfigFile parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(kExitConfig, "cannot read config file: " + path);
    ConfigFile config;
    std::string section;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string text = trim(line);
        if (text.empty() || text[0] == '#') continue;
        if (text.front() == '[' && text.back() == ']') {
            section = trim(text.substr(1, text.size() - 2));
            continue;
        }
        std::size_t eq = text.find('=');
        if (eq == std::string::npos) {
            fail(kExitConfig, path + " line " + std::to_string(line_no) + ": expected key = value");
        }
        std::string key = trim(text.substr(0, eq));
        std::string value = trim(text.substr(eq + 1));
        if (key.empty()) {
            fail(kExitConfig, path + " line " + std::to_string(line_no) + ": empty key");
        }
        config[section][key] = value;
    }
    return config;
}

// Binds CLI11 options to config-file keys: file values apply only when the
// flag was not given on the command line.
class KeyBinder {
public:
    explicit KeyBinder(CLI::App* app) : app_(app) {}

    template <typename T>
    CLI::Option* bind(const std::string& flag, T& target, const std::string& description) {
        CLI::Option* opt = app_->add_option(flag, target, description);
        std::string key = key_of(flag);
        setters_.emplace_back(key, [&target, key](const std::string& raw) {
            if (!parse_value(raw, target)) {
                fail(kExitConfig, "config key " + key + ": cannot parse value \"" + raw + "\"");
            }
        });
        options_.push_back(opt);
        return opt;
    }

    void apply(const ConfigSection& section) const {
        for (std::size_t i = 0; i < setters_.size(); ++i) {
            if (options_[i]->count() > 0) continue; // flags override file values
            auto it = section.find(setters_[i].first);
            if (it != section.end()) setters_[i].second(it->second);
        }
        for (const auto& [key, value] : section) {
            bool known = false;
            for (const auto& [bound_key, _] : setters_) {
                if (bound_key == key) {
                    known = true;
                    break;
                }
            }
            if (!known) fail(kExitConfig, "unknown config key: " + key);
        }
    }

private:
    static std::string key_of(const std::string& flag) {
        std::string key = flag.substr(flag.find_first_not_of('-'));
        for (char& c : key) {
            if (c == '-') c = '_';
        }
        return key;
    }

    static bool parse_value(const std::string& raw, std::string& out) {
        out = raw;
        return true;
    }
    static bool parse_value(const std::string& raw, double& out) {
        auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), out);
        return ec == std::errc() && ptr == raw.data() + raw.size();
    }
    static bool parse_value(const std::string& raw, std::uint64_t& out) {
        auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), out);
        return ec == std::errc() && ptr == raw.data() + raw.size();
    }
    static bool parse_value(const std::string& raw, std::uint32_t& out) {
        auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), out);
        return ec == std::errc() && ptr == raw.data() + raw.size();
    }

    CLI::App* app_;
    std::vector<std::pair<std::string, std::function<void(const std::string&)>>> setters_;
    std::vector<CLI::Option*> options_;
};

const char* model_name_of(kgf_model_kind kind) {
    switch (kind) {
    case KGF_MODEL_TRANSE: return "TransE";
    case KGF_MODEL_ROTATE: return "RotatE";
    case KGF_MODEL_DISTMULT: return "DistMult";
    case KGF_MODEL_COMPLEX: return "ComplEx";
    }
    return "?";
}

kgf_model_kind model_kind_of(const std::string& name) {
    std::string lower;
    for (char c : name) lower.push_back(char(std::tolower(static_cast<unsigned char>(c))));
    if (lower == "transe") return KGF_MODEL_TRANSE;
    if (lower == "rotate") return KGF_MODEL_ROTATE;
    if (lower == "distmult") return KGF_MODEL_DISTMULT;
    if (lower == "complex") return KGF_MODEL_COMPLEX;
    fail(kExitConfig, "unknown model kind: " + name);
}

// ---- expand ------------------------------------------------------------------

struct ExpandOptions {
    std::string graph;
    std::string candidates;
    std::string source = "file"; // file | synthetic | http
    std::string endpoint;
    std::string documents;
    std::uint64_t http_timeout_ms = 5000;
    std::uint64_t http_retries = 3;
    std::uint64_t synth_entities = 10;
    std::uint64_t synth_candidates = 0;
    std::string synth_law = "uniform";
    double synth_p_low = 0.2;
    double synth_p_high = 0.9;
    double synth_mix = 0.5;
    double tau = 0.7;
    std::string conflict_policy = "flag";
    std::string exclusivity;
    std::string out_graph;
    std::string out_report;
    std::uint64_t seed = 0;
};

BatchPtr make_batch(const ExpandOptions& opt) {
    if (opt.source == "file") {
        if (opt.candidates.empty()) fail(kExitConfig, "expand: --candidates is required");
        require_input_file(opt.candidates, "candidates file");
        char* rejects_json = nullptr;
        BatchPtr batch(kgf_batch_parse_file(opt.candidates.c_str(), &rejects_json));
        CString rejects = take(rejects_json);
        if (!batch) fail_status(kgf_last_status(), "parsing candidates");
        if (rejects && std::string_view(rejects.get()) != "[]") {
            std::fprintf(stderr, "rejected candidate lines: %s\n", rejects.get());
        }
        return batch;
    }
    if (opt.source == "synthetic") {
        BatchPtr batch(kgf_batch_synthesize(opt.seed, opt.synth_entities, opt.synth_candidates,
                                            opt.synth_law.c_str(), opt.synth_p_low,
                                            opt.synth_p_high, opt.synth_mix));
        if (!batch) fail(kExitConfig, std::string("synthesizing candidates: ") + kgf_last_error());
        return batch;
    }
    if (opt.source == "http") {
        if (opt.endpoint.empty()) fail(kExitConfig, "expand: --endpoint is required");
        std::vector<std::string> documents;
        if (!opt.documents.empty()) {
            require_input_file(opt.documents, "documents file");
            std::ifstream in(opt.documents);
            std::string line;
            while (std::getline(in, line)) {
                if (!line.empty()) documents.push_back(line);
            }
        }
        std::vector<const char*> pointers;
        pointers.reserve(documents.size());
        for (const std::string& d : documents) pointers.push_back(d.c_str());
        char* rejects_json = nullptr;
        BatchPtr batch(kgf_batch_fetch(opt.endpoint.c_str(), pointers.data(), pointers.size(),
                                       std::int32_t(opt.http_timeout_ms),
                                       std::int32_t(opt.http_retries), &rejects_json));
        CString rejects = take(rejects_json);
        if (!batch) fail_status(kgf_last_status(), "fetching candidates");
        return batch;
    }
    fail(kExitConfig, "expand: source must be file, synthetic or http");
}

int cmd_expand(const ExpandOptions& opt) {
    if (opt.out_graph.empty() && opt.out_report.empty()) {
        fail(kExitConfig, "expand: at least one of --out-graph / --out-report is required");
    }
    kgf_conflict_policy policy;
    if (opt.conflict_policy == "flag") {
        policy = KGF_CONFLICT_FLAG;
    } else if (opt.conflict_policy == "reject") {
        policy = KGF_CONFLICT_REJECT;
    } else {
        fail(kExitConfig, "expand: conflict policy must be flag or reject");
    }
    if (!(opt.tau >= 0.0 && opt.tau <= 1.0)) fail(kExitConfig, "expand: tau must be in [0, 1]");

    GraphPtr graph;
    if (opt.graph.empty()) {
        graph.reset(kgf_graph_new());
    } else {
        require_input_file(opt.graph, "graph file");
        graph.reset(kgf_graph_load_tsv(opt.graph.c_str()));
        if (!graph) fail_status(kgf_last_status(), "loading graph");
    }

    BatchPtr batch = make_batch(opt);

    char* report_json = nullptr;
    char* report_text = nullptr;
    kgf_status st = kgf_expand(graph.get(), batch.get(), opt.tau, policy,
                               opt.exclusivity.empty() ? nullptr : opt.exclusivity.c_str(),
                               &report_json, &report_text);
    CString json_str = take(report_json);
    CString text_str = take(report_text);
    if (st != KGF_OK) fail_status(st, "expansion");

    OutputStage stage;
    if (!opt.out_graph.empty()) {
        char* tsv = nullptr;
        if (kgf_graph_save_tsv_string(graph.get(), &tsv) != KGF_OK) {
            fail_status(kgf_last_status(), "serializing graph");
        }
        stage.add(opt.out_graph, take(tsv).get());
    }
    if (!opt.out_report.empty()) {
        stage.add(opt.out_report + ".json", json_str.get());
        stage.add(opt.out_report + ".txt", text_str.get());
    }
    stage.commit();
    std::fputs(text_str.get(), stdout);
    return kExitOk;
}

// ---- train ---------------------------------------------------------------------

struct TrainOptions {
    std::string triples;
    std::string model = "transe";
    std::string norm = "l2";
    std::uint32_t dim = 64;
    std::uint64_t epochs = 100;
    std::uint64_t batch_size = 128;
    double learning_rate = 0.01;
    double margin = 1.0;
    std::uint64_t negatives = 5;
    double l2_weight = 1e-5;
    std::uint64_t seed = 0;
    std::uint64_t threads = 1;
    std::string checkpoint;
    std::string loss_trace;
};

int cmd_train(const TrainOptions& opt) {
    if (opt.triples.empty()) fail(kExitConfig, "train: --triples is required");
    if (opt.checkpoint.empty()) fail(kExitConfig, "train: --checkpoint is required");
    require_input_file(opt.triples, "triples file");
    kgf_model_kind kind = model_kind_of(opt.model);
    kgf_norm norm;
    if (opt.norm == "l1") {
        norm = KGF_NORM_L1;
    } else if (opt.norm == "l2") {
        norm = KGF_NORM_L2;
    } else {
        fail(kExitConfig, "train: norm must be l1 or l2");
    }

    GraphPtr graph(kgf_graph_load_tsv(opt.triples.c_str()));
    if (!graph) fail_status(kgf_last_status(), "loading triples");
    std::uint64_t n_entities = 0, n_edges = 0, n_relations = 0;
    kgf_graph_counts(graph.get(), &n_entities, &n_edges, nullptr, &n_relations);
    if (n_edges == 0) fail(kExitConfig, "train: no triples in " + opt.triples);

    ModelPtr model(kgf_model_init(kind, opt.dim, n_entities, n_relations, opt.seed, norm));
    if (!model) fail(kExitConfig, std::string("initializing model: ") + kgf_last_error());

    kgf_train_config config;
    kgf_train_config_default(&config);
    config.epochs = opt.epochs;
    config.batch_size = opt.batch_size;
    config.learning_rate = opt.learning_rate;
    config.margin = opt.margin;
    config.negatives_per_positive = opt.negatives;
    config.l2_weight = opt.l2_weight;
    config.seed = opt.seed;
    config.threads = opt.threads;

    std::vector<double> losses(opt.epochs, 0.0);
    kgf_status st = kgf_model_train(model.get(), graph.get(), &config, losses.data());
    if (st != KGF_OK) fail_status(st, "training");
    for (std::size_t epoch = 0; epoch < losses.size(); ++epoch) {
        std::fprintf(stderr, "epoch %zu loss %s\n", epoch, format_double(losses[epoch]).c_str());
    }

    // The checkpoint is binary and written by the library; stage it through a
    // temp name for the same atomic-commit behavior as the text outputs.
    fs::path checkpoint_tmp = opt.checkpoint + ".tmp";
    if (kgf_model_save(model.get(), checkpoint_tmp.string().c_str()) != KGF_OK) {
        fail(kExitIo, std::string("saving checkpoint: ") + kgf_last_error());
    }

    try {
        OutputStage stage;
        if (!opt.loss_trace.empty()) {
            std::string csv;
            for (std::size_t epoch = 0; epoch < losses.size(); ++epoch) {
                csv += std::to_string(epoch);
                csv += ',';
                csv += format_double(losses[epoch]);
                csv += '\n';
            }
            stage.add(opt.loss_trace, std::move(csv));
        }
        stage.commit();
    } catch (...) {
        std::error_code ec;
        fs::remove(checkpoint_tmp, ec);
        throw;
    }
    std::error_code ec;
    fs::rename(checkpoint_tmp, opt.checkpoint, ec);
    if (ec) fail(kExitIo, "cannot rename checkpoint into place: " + opt.checkpoint);
    return kExitOk;
}

// ---- evaluate ---------------------------------------------------------------------

struct EvaluateOptions {
    std::string checkpoint;
    std::string train;
    std::string valid;
    std::string test;
    std::string dataset = "dataset";
    std::string out_metrics;
    std::uint64_t threads = 1;
};

int cmd_evaluate(const EvaluateOptions& opt) {
    if (opt.checkpoint.empty()) fail(kExitConfig, "evaluate: --checkpoint is required");
    if (opt.train.empty()) fail(kExitConfig, "evaluate: --train is required");
    if (opt.test.empty()) fail(kExitConfig, "evaluate: --test is required");
    if (opt.out_metrics.empty()) fail(kExitConfig, "evaluate: --out-metrics is required");
    require_input_file(opt.checkpoint, "checkpoint");
    require_input_file(opt.train, "train split");
    require_input_file(opt.test, "test split");
    if (!opt.valid.empty()) require_input_file(opt.valid, "valid split");

    ModelPtr model(kgf_model_load(opt.checkpoint.c_str()));
    if (!model) fail_status(kgf_last_status(), "loading checkpoint");
    GraphPtr train_graph(kgf_graph_load_tsv(opt.train.c_str()));
    if (!train_graph) fail_status(kgf_last_status(), "loading train split");

    kgf_ranking_metrics metrics;
    kgf_status st = kgf_evaluate_files(model.get(), train_graph.get(),
                                       opt.valid.empty() ? nullptr : opt.valid.c_str(),
                                       opt.test.c_str(), std::uint32_t(opt.threads), &metrics);
    if (st != KGF_OK) fail_status(st, "evaluation");
    if (metrics.skipped_queries > 0) {
        std::fprintf(stderr, "skipped queries over unseen entities/relations: %llu\n",
                     static_cast<unsigned long long>(metrics.skipped_queries));
    }

    kgf_model_kind kind;
    kgf_model_info(model.get(), &kind, nullptr, nullptr, nullptr);
    char* tsv = nullptr;
    char* json = nullptr;
    if (kgf_metrics_table_tsv(&metrics, opt.dataset.c_str(), model_name_of(kind), &tsv) != KGF_OK ||
        kgf_metrics_table_json(&metrics, opt.dataset.c_str(), model_name_of(kind), &json) != KGF_OK) {
        fail_status(kgf_last_status(), "formatting metrics");
    }
    CString tsv_str = take(tsv);
    CString json_str = take(json);

    OutputStage stage;
    stage.add(opt.out_metrics + ".tsv", tsv_str.get());
    stage.add(opt.out_metrics + ".json", json_str.get());
    stage.commit();
    std::fputs(tsv_str.get(), stdout);
    return kExitOk;
}

// ---- analyze ---------------------------------------------------------------------

struct AnalyzeOptions {
    std::string graph;
    std::string name = "graph";
    std::string out_report;
    std::string edge_list;
    std::uint64_t threads = 1;
};

int cmd_analyze(const AnalyzeOptions& opt) {
    if (opt.graph.empty()) fail(kExitConfig, "analyze: --graph is required");
    if (opt.out_report.empty()) fail(kExitConfig, "analyze: --out-report is required");
    require_input_file(opt.graph, "graph file");

    GraphPtr graph(kgf_graph_load_tsv(opt.graph.c_str()));
    if (!graph) fail_status(kgf_last_status(), "loading graph");

    kgf_network_report report;
    kgf_status st = kgf_graph_network_report(graph.get(), std::uint32_t(opt.threads), &report);
    if (st != KGF_OK) fail_status(st, "network analysis");

    char* tsv = nullptr;
    char* json = nullptr;
    if (kgf_network_table_tsv(&report, opt.name.c_str(), &tsv) != KGF_OK ||
        kgf_network_table_json(&report, opt.name.c_str(), &json) != KGF_OK) {
        fail_status(kgf_last_status(), "formatting network report");
    }
    CString tsv_str = take(tsv);
    CString json_str = take(json);

    OutputStage stage;
    stage.add(opt.out_report + ".tsv", tsv_str.get());
    stage.add(opt.out_report + ".json", json_str.get());
    if (!opt.edge_list.empty()) {
        char* edges = nullptr;
        if (kgf_graph_edge_list_tsv(graph.get(), &edges) != KGF_OK) {
            fail_status(kgf_last_status(), "exporting edge list");
        }
        stage.add(opt.edge_list, take(edges).get());
    }
    stage.commit();
    std::fputs(tsv_str.get(), stdout);
    return kExitOk;
}

// ---- report ---------------------------------------------------------------------

struct ReportOptions {
    std::string expansion;
    std::string metrics;
    std::string network;
    std::string out;
};

nlohmann::json load_json_file(const std::string& path, const char* what) {
    require_input_file(path, what);
    std::ifstream in(path);
    nlohmann::json obj = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (obj.is_discarded()) fail(kExitParse, std::string(what) + ": not valid JSON: " + path);
    return obj;
}

void render_section(std::string& out, const char* name, const nlohmann::json& obj) {
    out += '[';
    out += name;
    out += "]\n";
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        out += it.key();
        out += " = ";
        if (it.value().is_string()) {
            out += it.value().get<std::string>();
        } else {
            out += it.value().dump();
        }
        out += '\n';
    }
    out += '\n';
}

int cmd_report(const ReportOptions& opt) {
    if (opt.out.empty()) fail(kExitConfig, "report: --out is required");
    if (opt.expansion.empty() && opt.metrics.empty() && opt.network.empty()) {
        fail(kExitConfig, "report: at least one input report is required");
    }

    nlohmann::json combined;
    std::string text;
    combined["expansion"] = nullptr;
    combined["ranking"] = nullptr;
    combined["network"] = nullptr;
    if (!opt.expansion.empty()) {
        combined["expansion"] = load_json_file(opt.expansion, "expansion report");
        render_section(text, "expansion", combined["expansion"]);
    }
    if (!opt.metrics.empty()) {
        combined["ranking"] = load_json_file(opt.metrics, "ranking metrics");
        render_section(text, "ranking", combined["ranking"]);
    }
    if (!opt.network.empty()) {
        combined["network"] = load_json_file(opt.network, "network report");
        render_section(text, "network", combined["network"]);
    }

    OutputStage stage;
    stage.add(opt.out + ".json", combined.dump(2) + "\n");
    stage.add(opt.out + ".txt", text);
    stage.commit();
    std::fputs(text.c_str(), stdout);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"kgforge: knowledge-graph expansion, embedding training and evaluation"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kgf_version());
    std::string config_path;
    app.add_option("--config", config_path, "flat key-value config file (sections per subcommand)");

    ExpandOptions expand_opt;
    CLI::App* expand = app.add_subcommand("expand", "integrate candidate triples into a graph");
    KeyBinder expand_keys(expand);
    expand_keys.bind("--graph", expand_opt.graph, "input graph TSV (omit to start empty)");
    expand_keys.bind("--candidates", expand_opt.candidates, "candidates JSONL (file source)");
    expand_keys.bind("--source", expand_opt.source, "candidate source: file, synthetic or http");
    expand_keys.bind("--endpoint", expand_opt.endpoint, "extraction endpoint URL (http source)");
    expand_keys.bind("--documents", expand_opt.documents, "documents file, one text block per line");
    expand_keys.bind("--http-timeout-ms", expand_opt.http_timeout_ms, "HTTP timeout in ms");
    expand_keys.bind("--http-retries", expand_opt.http_retries, "HTTP attempts before giving up");
    expand_keys.bind("--synth-entities", expand_opt.synth_entities, "synthetic entity pool size");
    expand_keys.bind("--synth-candidates", expand_opt.synth_candidates, "synthetic candidate count");
    expand_keys.bind("--synth-law", expand_opt.synth_law, "confidence law: uniform or two_point");
    expand_keys.bind("--synth-p-low", expand_opt.synth_p_low, "two_point low confidence");
    expand_keys.bind("--synth-p-high", expand_opt.synth_p_high, "two_point high confidence");
    expand_keys.bind("--synth-mix", expand_opt.synth_mix, "two_point high-confidence fraction");
    expand_keys.bind("--tau", expand_opt.tau, "confidence threshold in [0, 1]");
    expand_keys.bind("--conflict-policy", expand_opt.conflict_policy, "flag or reject");
    expand_keys.bind("--exclusivity", expand_opt.exclusivity,
                     "mutually exclusive relation pairs, e.g. increases|decreases,a|b");
    expand_keys.bind("--out-graph", expand_opt.out_graph, "expanded graph TSV output");
    expand_keys.bind("--out-report", expand_opt.out_report, "report output prefix (.json/.txt)");
    expand_keys.bind("--seed", expand_opt.seed, "seed for the synthetic source");

    TrainOptions train_opt;
    CLI::App* train = app.add_subcommand("train", "train a link-prediction embedding model");
    KeyBinder train_keys(train);
    train_keys.bind("--triples", train_opt.triples, "training triples TSV");
    train_keys.bind("--model", train_opt.model, "transe, rotate, distmult or complex");
    train_keys.bind("--norm", train_opt.norm, "distance norm: l1 or l2 (transe/rotate)");
    train_keys.bind("--dim", train_opt.dim, "embedding dimension");
    train_keys.bind("--epochs", train_opt.epochs, "training epochs");
    train_keys.bind("--batch-size", train_opt.batch_size, "minibatch size");
    train_keys.bind("--learning-rate", train_opt.learning_rate, "SGD step size");
    train_keys.bind("--margin", train_opt.margin, "ranking margin (transe/rotate)");
    train_keys.bind("--negatives", train_opt.negatives, "negatives per positive");
    train_keys.bind("--l2-weight", train_opt.l2_weight, "L2 penalty (distmult/complex)");
    train_keys.bind("--seed", train_opt.seed, "seed fixing every stochastic choice");
    train_keys.bind("--threads", train_opt.threads, "worker threads (1 = deterministic)");
    train_keys.bind("--checkpoint", train_opt.checkpoint, "checkpoint output path");
    train_keys.bind("--loss-trace", train_opt.loss_trace, "per-epoch loss CSV output");

    EvaluateOptions eval_opt;
    CLI::App* evaluate = app.add_subcommand("evaluate", "filtered ranking over a test split");
    KeyBinder eval_keys(evaluate);
    eval_keys.bind("--checkpoint", eval_opt.checkpoint, "model checkpoint");
    eval_keys.bind("--train", eval_opt.train, "train split TSV (defines the id space)");
    eval_keys.bind("--valid", eval_opt.valid, "valid split TSV (filter set only)");
    eval_keys.bind("--test", eval_opt.test, "test split TSV");
    eval_keys.bind("--dataset", eval_opt.dataset, "dataset name for the report row");
    eval_keys.bind("--out-metrics", eval_opt.out_metrics, "metrics output prefix (.tsv/.json)");
    eval_keys.bind("--threads", eval_opt.threads, "ranking worker threads");

    AnalyzeOptions analyze_opt;
    CLI::App* analyze = app.add_subcommand("analyze", "complex-network measurements of a graph");
    KeyBinder analyze_keys(analyze);
    analyze_keys.bind("--graph", analyze_opt.graph, "graph TSV");
    analyze_keys.bind("--name", analyze_opt.name, "row name for the report");
    analyze_keys.bind("--out-report", analyze_opt.out_report, "report output prefix (.tsv/.json)");
    analyze_keys.bind("--edge-list", analyze_opt.edge_list, "optional u<TAB>v edge list export");
    analyze_keys.bind("--threads", analyze_opt.threads, "BFS worker threads");

    ReportOptions report_opt;
    CLI::App* report = app.add_subcommand("report", "merge prior outputs into one document");
    KeyBinder report_keys(report);
    report_keys.bind("--expansion", report_opt.expansion, "expansion report JSON");
    report_keys.bind("--metrics", report_opt.metrics, "ranking metrics JSON");
    report_keys.bind("--network", report_opt.network, "network report JSON");
    report_keys.bind("--out", report_opt.out, "combined output prefix (.json/.txt)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (!config_path.empty()) {
            ConfigFile config = parse_config_file(config_path);
            for (const auto& [section, keys] : config) {
                if (section == "expand") {
                    expand_keys.apply(keys);
                } else if (section == "train") {
                    train_keys.apply(keys);
                } else if (section == "evaluate") {
                    eval_keys.apply(keys);
                } else if (section == "analyze") {
                    analyze_keys.apply(keys);
                } else if (section == "report") {
                    report_keys.apply(keys);
                } else {
                    fail(kExitConfig, "unknown config section: [" + section + "]");
                }
            }
        }

        if (expand->parsed()) return cmd_expand(expand_opt);
        if (train->parsed()) return cmd_train(train_opt);
        if (evaluate->parsed()) return cmd_evaluate(eval_opt);
        if (analyze->parsed()) return cmd_analyze(analyze_opt);
        if (report->parsed()) return cmd_report(report_opt);
        fail(kExitConfig, "no subcommand given");
    } catch (const CliError& e) {
        std::fprintf(stderr, "kgforge: %s\n", e.message.c_str());
        return e.code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "kgforge: %s\n", e.what());
        return kExitConfig;
    }
}
