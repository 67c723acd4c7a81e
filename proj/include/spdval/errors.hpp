#pragma once

#include <stdexcept>
#include <string>

namespace spdval {

enum class ErrorCode {
    NonNormalized,
    NegativeDensity,
    OutOfRange,
    DivergentIntegral,
    TooFewSamples,
    InsufficientQuotes,
    UnrepairableQuotes,
    OutOfDomain,
    SlopeOutOfRange,
    NegativeMass,
    TargetDensityVanishes,
    NotUnimodal,
    ZeroVariance,
    UnboundedQ,
    NotEquivalent,
    NonPositiveScale,
    InvalidInput,
};

const char* error_code_name(ErrorCode c) noexcept;

//! Domain error carrying a stable code for CLI exit-status / report mapping.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace spdval
