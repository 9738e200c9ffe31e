#pragma once
// Candidate-triple sources feeding the expansion engine: a JSONL reader, a
// deterministic synthetic generator, and (see http_source.hpp) an HTTP client
// for an external extraction endpoint. Batches are immutable once built and
// never contain a confidence outside [0, 1] or an empty normalized label.

#include "kgforge/error.hpp"

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace kgforge {

struct CandidateTriple {
    std::string head_label; // normalized
    std::string relation_label;
    std::string tail_label;
    std::string head_type;
    std::string tail_type;
    double confidence = 1.0; // in [0, 1]
    std::string source_doc;

    bool operator==(const CandidateTriple&) const = default;
};

struct ExtractionBatch {
    std::vector<CandidateTriple> candidates; // order preserved as received
    std::string corpus_id;
    std::string extractor_id;

    bool operator==(const ExtractionBatch&) const = default;
};

struct RejectedCandidate {
    std::size_t line_number; // 1-based
    std::string reason;
};

struct ParsedCandidates {
    ExtractionBatch batch;
    std::vector<RejectedCandidate> rejects;
};

// One JSON object per line with keys head, relation, tail, confidence and
// optional head_type, tail_type, source. Labels are normalized on ingest.
// Malformed lines (bad JSON, missing/mistyped keys) abort with a parse error
// carrying the line number. Semantic violations (confidence outside [0, 1],
// label empty after normalization) reject the line and parsing continues.
ParsedCandidates parse_candidates(std::string_view jsonl);
ParsedCandidates parse_candidates(std::istream& jsonl);

// Inverse of parse_candidates on valid batches (empty optional fields are
// omitted from the emitted objects).
std::string serialize_candidates(const ExtractionBatch& batch);

enum class ConfidenceLaw {
    uniform,   // U[0, 1)
    two_point, // p_high with probability mix, else p_low
};

struct SyntheticSpec {
    std::uint64_t seed = 0;
    std::size_t n_entities = 2;
    std::size_t n_candidates = 0;
    ConfidenceLaw law = ConfidenceLaw::uniform;
    double p_low = 0.2;
    double p_high = 0.9;
    double mix = 0.5;
};

// Deterministic for a fixed spec: labels are drawn from a closed pool of
// n_entities names, head != tail. Throws invalid_input when n_entities < 2.
ExtractionBatch synthesize_candidates(const SyntheticSpec& spec);

} // namespace kgforge
