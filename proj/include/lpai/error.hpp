#pragma once

#include <stdexcept>
#include <string>

namespace lpai {

// Coarse error classes; the CLI maps each to a distinct exit code.
enum class ErrorCategory {
    InvalidArgument = 2,
    ConfigParse = 3,
    Infeasible = 4,
    Numerical = 5,
    InsufficientData = 6,
    Io = 7,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }
    int exit_code() const noexcept { return static_cast<int>(category_); }

private:
    ErrorCategory category_;
};

struct InvalidArgumentError : Error {
    explicit InvalidArgumentError(const std::string& w) : Error(ErrorCategory::InvalidArgument, w) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& w) : Error(ErrorCategory::ConfigParse, w) {}
};

/// Requested data rate cannot hold the configured overheads and pulses.
struct InfeasibleRateError : Error {
    explicit InfeasibleRateError(const std::string& w) : Error(ErrorCategory::Infeasible, w) {}
};

/// Atom-number map is not a contraction (recapture * survival >= 1).
struct DivergenceError : Error {
    explicit DivergenceError(const std::string& w) : Error(ErrorCategory::Numerical, w) {}
};

struct RankDeficiencyError : Error {
    explicit RankDeficiencyError(const std::string& w) : Error(ErrorCategory::Numerical, w) {}
};

struct NonConvergenceError : Error {
    explicit NonConvergenceError(const std::string& w) : Error(ErrorCategory::Numerical, w) {}
};

/// Two fringe-order hypotheses fit equally well.
struct AmbiguityError : Error {
    explicit AmbiguityError(const std::string& w) : Error(ErrorCategory::Numerical, w) {}
};

struct DegenerateSignalError : Error {
    explicit DegenerateSignalError(const std::string& w) : Error(ErrorCategory::Numerical, w) {}
};

struct InsufficientDataError : Error {
    explicit InsufficientDataError(const std::string& w) : Error(ErrorCategory::InsufficientData, w) {}
};

struct IoError : Error {
    explicit IoError(const std::string& w) : Error(ErrorCategory::Io, w) {}
};

}  // namespace lpai
