#include "spdval/log.hpp"

#include <cstdlib>
#include <cstring>
#include <iostream>
#include <mutex>

#include "spdval/errors.hpp"

namespace spdval {

const char* error_code_name(ErrorCode c) noexcept {
    switch (c) {
        case ErrorCode::NonNormalized:         return "NonNormalized";
        case ErrorCode::NegativeDensity:       return "NegativeDensity";
        case ErrorCode::OutOfRange:            return "OutOfRange";
        case ErrorCode::DivergentIntegral:     return "DivergentIntegral";
        case ErrorCode::TooFewSamples:         return "TooFewSamples";
        case ErrorCode::InsufficientQuotes:    return "InsufficientQuotes";
        case ErrorCode::UnrepairableQuotes:    return "UnrepairableQuotes";
        case ErrorCode::OutOfDomain:           return "OutOfDomain";
        case ErrorCode::SlopeOutOfRange:       return "SlopeOutOfRange";
        case ErrorCode::NegativeMass:          return "NegativeMass";
        case ErrorCode::TargetDensityVanishes: return "TargetDensityVanishes";
        case ErrorCode::NotUnimodal:           return "NotUnimodal";
        case ErrorCode::ZeroVariance:          return "ZeroVariance";
        case ErrorCode::UnboundedQ:            return "UnboundedQ";
        case ErrorCode::NotEquivalent:         return "NotEquivalent";
        case ErrorCode::NonPositiveScale:      return "NonPositiveScale";
        case ErrorCode::InvalidInput:          return "InvalidInput";
    }
    return "UnknownError";
}

} // namespace spdval

namespace spdval::log {

Level threshold() noexcept {
    static const Level lv = [] {
        const char* env = std::getenv("SPDVAL_LOG");
        if (!env) return Level::warn;
        if (std::strcmp(env, "error") == 0) return Level::error;
        if (std::strcmp(env, "warn") == 0)  return Level::warn;
        if (std::strcmp(env, "info") == 0)  return Level::info;
        if (std::strcmp(env, "debug") == 0) return Level::debug;
        return Level::warn;
    }();
    return lv;
}

bool enabled(Level lv) noexcept { return static_cast<int>(lv) <= static_cast<int>(threshold()); }

void write(Level lv, const std::string& msg) {
    static std::mutex mu;
    static const char* names[] = {"error", "warn", "info", "debug"};
    std::lock_guard<std::mutex> lock(mu);
    std::cerr << "[spdval:" << names[static_cast<int>(lv)] << "] " << msg << "\n";
}

} // namespace spdval::log
