#include "mollow/error.hpp"

namespace mollow {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidDimension: return "invalid-dimension";
        case ErrorKind::Embedding: return "embedding";
        case ErrorKind::Algebra: return "algebra";
        case ErrorKind::Parameter: return "parameter";
        case ErrorKind::Configuration: return "configuration";
        case ErrorKind::NonUniqueSteadyState: return "non-unique-steady-state";
        case ErrorKind::Solver: return "solver";
        case ErrorKind::TruncationNonconvergence: return "truncation-nonconvergence";
        case ErrorKind::Comparison: return "comparison";
        case ErrorKind::NotInMollowRegime: return "not-in-mollow-regime";
        case ErrorKind::Io: return "io";
        case ErrorKind::Scan: return "scan";
    }
    return "unknown";
}

}  // namespace mollow
