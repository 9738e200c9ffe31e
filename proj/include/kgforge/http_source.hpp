#pragma once
// HTTP client for an external extraction endpoint. POSTs a JSON document
// batch and parses the JSONL candidate response. A pure source: never
// touches the graph.

#include "kgforge/candidates.hpp"

#include <chrono>
#include <span>
#include <string>

namespace kgforge {

struct RetryPolicy {
    int max_attempts = 3; // total tries, >= 1
    std::chrono::milliseconds backoff{100};
};

// Request body {"documents": [...]}; expected response body is the JSONL
// candidate format of parse_candidates. A bearer token is attached from the
// KGFORGE_EXTRACTOR_TOKEN environment variable when set.
//
// Errors: transport after exhausting retries on connection failure; endpoint
// (carrying the status code) on a non-2xx response; parse on a
// non-conforming body. No partial batches: any failure yields no result.
ParsedCandidates fetch_candidates(const std::string& endpoint_url,
                                  std::span<const std::string> documents,
                                  std::chrono::milliseconds timeout = std::chrono::milliseconds(5000),
                                  const RetryPolicy& retry = {});

} // namespace kgforge
