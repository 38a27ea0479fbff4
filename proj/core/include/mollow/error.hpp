#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mollow {

enum class ErrorKind {
    InvalidDimension,
    Embedding,
    Algebra,
    Parameter,
    Configuration,
    NonUniqueSteadyState,
    Solver,
    TruncationNonconvergence,
    Comparison,
    NotInMollowRegime,
    Io,
    Scan,
};

// Stable lower-case identifier, used in the CLI's machine-readable error line.
std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace mollow
