#pragma once

#include <stdexcept>
#include <string>

namespace kgforge {

// One error taxonomy for the whole library. The C API maps these codes
// one-to-one onto kgf_status values.
enum class ErrorCode {
    invalid_input,
    not_found,
    parse,
    io,
    endpoint,
    transport,
    training_diverged,
    undefined_metric,
    internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace kgforge
