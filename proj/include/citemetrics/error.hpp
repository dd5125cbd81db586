#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace citemetrics {

// Malformed input file content. `line` is 1-based; 0 means "whole input".
class InputError : public std::runtime_error {
public:
    InputError(std::size_t line, const std::string& reason)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + reason : reason),
          line_(line), reason_(reason) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::size_t line_;
    std::string reason_;
};

// Invalid policy, thresholds or other user configuration.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class MetricErrorKind {
    MissingDenominator,
    UndefinedRate,
    ZeroWindowCitations,
    ZeroCoverage,
    DegenerateVolume,
    UnobservedAge,
    TooFewVolumes,
    ZeroFieldMean,
    OracleRefused,
};

// An indicator that is undefined for the given data.
class MetricError : public std::domain_error {
public:
    MetricError(MetricErrorKind kind, const std::string& what)
        : std::domain_error(what), kind_(kind) {}

    MetricErrorKind kind() const noexcept { return kind_; }

private:
    MetricErrorKind kind_;
};

}  // namespace citemetrics
