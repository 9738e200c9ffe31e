#include "kgforge/candidates.hpp"

#include "kgforge/graph.hpp"
#include "kgforge/rng.hpp"

#include <json.hpp>

#include <array>
#include <sstream>

namespace kgforge {

namespace {

using nlohmann::json;

std::string line_error(std::size_t line_no, const std::string& reason) {
    return "line " + std::to_string(line_no) + ": " + reason;
}

std::string require_string(const json& obj, const char* key, std::size_t line_no) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw Error(ErrorCode::parse, line_error(line_no, std::string("missing key \"") + key + "\""));
    }
    if (!it->is_string()) {
        throw Error(ErrorCode::parse, line_error(line_no, std::string("key \"") + key + "\" is not a string"));
    }
    return it->get<std::string>();
}

std::string optional_string(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it != obj.end() && it->is_string()) return it->get<std::string>();
    return {};
}

} // namespace

ParsedCandidates parse_candidates(std::string_view jsonl) {
    ParsedCandidates result;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= jsonl.size()) {
        std::size_t eol = jsonl.find('\n', pos);
        std::string_view line = (eol == std::string_view::npos)
                                    ? jsonl.substr(pos)
                                    : jsonl.substr(pos, eol - pos);
        pos = (eol == std::string_view::npos) ? jsonl.size() + 1 : eol + 1;
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

        json obj = json::parse(line, nullptr, /*allow_exceptions=*/false);
        if (obj.is_discarded() || !obj.is_object()) {
            throw Error(ErrorCode::parse, line_error(line_no, "not a JSON object"));
        }

        CandidateTriple c;
        c.head_label = KnowledgeGraph::normalize_label(require_string(obj, "head", line_no));
        c.relation_label = KnowledgeGraph::normalize_label(require_string(obj, "relation", line_no));
        c.tail_label = KnowledgeGraph::normalize_label(require_string(obj, "tail", line_no));

        auto conf_it = obj.find("confidence");
        if (conf_it == obj.end() || !conf_it->is_number()) {
            throw Error(ErrorCode::parse, line_error(line_no, "missing or non-numeric \"confidence\""));
        }
        c.confidence = conf_it->get<double>();
        c.head_type = optional_string(obj, "head_type");
        c.tail_type = optional_string(obj, "tail_type");
        c.source_doc = optional_string(obj, "source");

        if (!(c.confidence >= 0.0 && c.confidence <= 1.0)) {
            result.rejects.push_back({line_no, "confidence outside [0, 1]"});
            continue;
        }
        if (c.head_label.empty() || c.relation_label.empty() || c.tail_label.empty()) {
            result.rejects.push_back({line_no, "label empty after normalization"});
            continue;
        }
        result.batch.candidates.push_back(std::move(c));
    }
    return result;
}

ParsedCandidates parse_candidates(std::istream& jsonl) {
    std::ostringstream buf;
    buf << jsonl.rdbuf();
    return parse_candidates(std::string_view(buf.view()));
}

std::string serialize_candidates(const ExtractionBatch& batch) {
    std::string out;
    for (const CandidateTriple& c : batch.candidates) {
        json obj;
        obj["head"] = c.head_label;
        obj["relation"] = c.relation_label;
        obj["tail"] = c.tail_label;
        obj["confidence"] = c.confidence;
        if (!c.head_type.empty()) obj["head_type"] = c.head_type;
        if (!c.tail_type.empty()) obj["tail_type"] = c.tail_type;
        if (!c.source_doc.empty()) obj["source"] = c.source_doc;
        out += obj.dump();
        out += '\n';
    }
    return out;
}

ExtractionBatch synthesize_candidates(const SyntheticSpec& spec) {
    if (spec.n_entities < 2) {
        throw Error(ErrorCode::invalid_input, "synthetic source needs at least 2 entities");
    }

    static constexpr std::array<std::string_view, 4> kRelations = {
        "linked_to", "influences", "part_of", "observed_with"};
    static constexpr std::array<std::string_view, 3> kTypes = {"Disease", "Biomarker", "Treatment"};

    Rng rng(spec.seed);
    ExtractionBatch batch;
    batch.corpus_id = "synthetic:" + std::to_string(spec.seed);
    batch.extractor_id = "synthetic";
    batch.candidates.reserve(spec.n_candidates);

    for (std::size_t i = 0; i < spec.n_candidates; ++i) {
        std::uint64_t head = rng.below(spec.n_entities);
        std::uint64_t tail = rng.below(spec.n_entities - 1);
        if (tail >= head) ++tail; // head != tail
        std::uint64_t rel = rng.below(kRelations.size());

        CandidateTriple c;
        c.head_label = "e" + std::to_string(head);
        c.tail_label = "e" + std::to_string(tail);
        c.relation_label = std::string(kRelations[rel]);
        c.head_type = std::string(kTypes[head % kTypes.size()]);
        c.tail_type = std::string(kTypes[tail % kTypes.size()]);
        switch (spec.law) {
        case ConfidenceLaw::uniform:
            c.confidence = rng.canonical();
            break;
        case ConfidenceLaw::two_point:
            c.confidence = rng.canonical() < spec.mix ? spec.p_high : spec.p_low;
            break;
        }
        c.source_doc = batch.corpus_id + "/" + std::to_string(i);
        batch.candidates.push_back(std::move(c));
    }
    return batch;
}

} // namespace kgforge
