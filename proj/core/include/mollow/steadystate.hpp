#pragma once

#include <cstddef>
#include <limits>
#include <optional>

#include "mollow/hilbert.hpp"
#include "mollow/liouvillian.hpp"
#include "mollow/model.hpp"

namespace mollow {

enum class SolveMethod { DirectLU, IterativeBiCGSTAB };

struct SolverOptions {
    // Accepted when ||L vec(rho)||_2 <= tolerance * max(1, ||L||_max).
    double tolerance = 1e-10;
    // Direct factorization is skipped when its estimated footprint exceeds this.
    std::size_t memory_cap_bytes = std::size_t{4} << 30;
    bool force_iterative = false;
    int max_iterations = 20000;
};

struct SteadyState {
    HilbertSpace space;
    DenseMatrix rho;
    double residual = 0.0;           // ||L vec(rho)||_2
    double trace_error = 0.0;        // |Tr rho - 1|
    double hermiticity_error = 0.0;  // max |rho - rho^dag|
    double min_eigenvalue = 0.0;     // diagnostics only; never clipped
    SolveMethod method = SolveMethod::DirectLU;

    bool positive_semidefinite(double tol = 1e-8) const { return min_eigenvalue >= -tol; }
};

// Heuristic LU footprint used to decide between direct and iterative solves.
std::size_t estimated_factorization_bytes(const Liouvillian& liouvillian);

// Solves L rho = 0, Tr rho = 1 by replacing the first row of L with the trace
// row and factorizing. Throws NonUniqueSteadyState when the bordered system is
// singular, Solver when the residual check fails.
SteadyState solve(const Liouvillian& liouvillian, const SolverOptions& options = {});

// Steady state of one simulation point, with the layout needed to read it.
struct ModelSteadyState {
    ModelKind kind;
    ModelParams params;
    ModelLayout layout;
    SteadyState state;
};

ModelSteadyState solve_model(ModelKind kind, const ModelParams& params, const SolverOptions& options = {});

enum class Observable { PhotonNumber, G2 };

struct Truncation {
    int n_cavity = 8;
    int n_mech = 12;
    friend bool operator==(const Truncation&, const Truncation&) = default;
};

struct LadderOptions {
    double tolerance = 1e-6;  // relative change between successive truncations
    int max_n_cavity = 64;
    int max_n_mech = 48;
    SolverOptions solver;
};

struct LadderResult {
    Truncation dims;
    std::optional<double> value;  // absent only for g2 below the n_a floor
    ModelSteadyState solution;    // solved at `dims`
    int solves = 0;
};

// Doubles each bosonic truncation separately until no single doubling moves
// the observable by `tolerance` (relative) or more; returns the smaller dims.
// An infinite tolerance returns `start` after a single solve.
LadderResult converge_state(ModelKind kind, const ModelParams& params, Observable observable,
                            Truncation start, const LadderOptions& options);

struct ConvergedValue {
    Truncation dims;
    std::optional<double> value;
};

ConvergedValue converge_truncation(ModelKind kind, const ModelParams& params, Observable observable,
                                   Truncation start, double tol, const LadderOptions& options = {});

}  // namespace mollow
