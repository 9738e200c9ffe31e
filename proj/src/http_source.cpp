#include "kgforge/http_source.hpp"

#include <httplib.h>
#include <json.hpp>

#include <cstdlib>
#include <thread>

namespace kgforge {

namespace {

struct SplitUrl {
    std::string base; // scheme://host[:port]
    std::string path; // leading slash, "/" when absent
};

SplitUrl split_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw Error(ErrorCode::invalid_input, "endpoint URL missing scheme: " + url);
    }
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        return SplitUrl{url, "/"};
    }
    return SplitUrl{url.substr(0, path_start), url.substr(path_start)};
}

} // namespace

ParsedCandidates fetch_candidates(const std::string& endpoint_url,
                                  std::span<const std::string> documents,
                                  std::chrono::milliseconds timeout, const RetryPolicy& retry) {
    if (retry.max_attempts < 1) {
        throw Error(ErrorCode::invalid_input, "retry policy needs at least one attempt");
    }
    SplitUrl url = split_url(endpoint_url);

    nlohmann::json body;
    body["documents"] = nlohmann::json::array();
    for (const std::string& doc : documents) body["documents"].push_back(doc);
    const std::string payload = body.dump();

    httplib::Client client(url.base);
    client.set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(timeout).count(),
                                  (timeout % std::chrono::seconds(1)).count() * 1000);
    client.set_read_timeout(std::chrono::duration_cast<std::chrono::seconds>(timeout).count(),
                            (timeout % std::chrono::seconds(1)).count() * 1000);

    httplib::Headers headers;
    if (const char* token = std::getenv("KGFORGE_EXTRACTOR_TOKEN"); token && *token) {
        headers.emplace("Authorization", std::string("Bearer ") + token);
    }

    httplib::Result result;
    for (int attempt = 1; attempt <= retry.max_attempts; ++attempt) {
        result = client.Post(url.path, headers, payload, "application/json");
        if (result) break;
        if (attempt == retry.max_attempts) {
            throw Error(ErrorCode::transport,
                        "extraction endpoint unreachable after " + std::to_string(attempt) +
                            " attempts: " + endpoint_url);
        }
        std::this_thread::sleep_for(retry.backoff);
    }

    if (result->status < 200 || result->status >= 300) {
        throw Error(ErrorCode::endpoint,
                    "extraction endpoint returned status " + std::to_string(result->status));
    }
    return parse_candidates(std::string_view(result->body));
}

} // namespace kgforge
