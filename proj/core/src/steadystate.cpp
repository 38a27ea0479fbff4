#include "mollow/steadystate.hpp"

#include <cmath>
#include <new>
#include <string>
#include <vector>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>
#ifdef MOLLOW_HAVE_UMFPACK
#include <Eigen/UmfPackSupport>
#endif

#include "mollow/error.hpp"
#include "mollow/observables.hpp"

namespace mollow {

namespace {

using Triplet = Eigen::Triplet<Complex, int>;

// Row 0 of L is replaced by vec(I)^T. Row 0 is the rho_00 equation, which is
// minus the sum of the other diagonal-element rows, so it carries no information.
SparseMatrix bordered_system(const Liouvillian& l) {
    const int n = l.space.total_dim();
    std::vector<Triplet> entries;
    entries.reserve(static_cast<std::size_t>(l.matrix.nonZeros()) + static_cast<std::size_t>(n));
    for (int k = 0; k < l.matrix.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(l.matrix, k); it; ++it) {
            if (it.row() != 0) entries.emplace_back(static_cast<int>(it.row()), k, it.value());
        }
    }
    for (int i = 0; i < n; ++i) entries.emplace_back(0, i * (n + 1), 1.0);
    SparseMatrix a(l.matrix.rows(), l.matrix.cols());
    a.setFromTriplets(entries.begin(), entries.end());
    a.makeCompressed();
    return a;
}

bool all_finite(const DenseVector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) return false;
    }
    return true;
}

template <typename Factorization>
std::optional<DenseVector> finish(Factorization& lu, const DenseVector& b) {
    if (lu.info() != Eigen::Success) return std::nullopt;
    DenseVector x = lu.solve(b);
    if (lu.info() != Eigen::Success || !all_finite(x)) return std::nullopt;
    return x;
}

std::optional<DenseVector> solve_direct(const SparseMatrix& a, const DenseVector& b) {
#ifdef MOLLOW_HAVE_UMFPACK
    {
        Eigen::UmfPackLU<SparseMatrix> lu;
        lu.compute(a);
        if (auto x = finish(lu, b)) return x;
    }
#endif
    Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
    lu.analyzePattern(a);
    lu.factorize(a);
    return finish(lu, b);
}

DenseVector solve_iterative(const SparseMatrix& a, const DenseVector& b, const SolverOptions& options,
                            double scale) {
    Eigen::BiCGSTAB<SparseMatrix, Eigen::IncompleteLUT<Complex>> solver;
    solver.preconditioner().setDroptol(1e-6);
    solver.preconditioner().setFillfactor(20);
    solver.setMaxIterations(options.max_iterations);
    solver.setTolerance(std::min(1e-3, options.tolerance * scale * 1e-2));
    solver.compute(a);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::Solver, "iterative solver: preconditioner construction failed");
    }
    DenseVector x = solver.solve(b);
    if (!all_finite(x)) {
        throw Error(ErrorKind::Solver, "iterative solver produced non-finite values after " +
                                           std::to_string(solver.iterations()) + " iterations");
    }
    return x;
}

double hermiticity(const DenseMatrix& rho) { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }

}  // namespace

std::size_t estimated_factorization_bytes(const Liouvillian& liouvillian) {
    // COLAMD-ordered LU of the cascaded Liouvillians measured at roughly
    // 100-120 times the nonzero count.
    constexpr std::size_t kFillFactor = 120;
    return static_cast<std::size_t>(liouvillian.matrix.nonZeros()) * kFillFactor * sizeof(Complex);
}

SteadyState solve(const Liouvillian& liouvillian, const SolverOptions& options) {
    const int n = liouvillian.space.total_dim();
    const double scale = std::max(1.0, liouvillian.max_abs());
    if (!liouvillian.is_trace_annihilating()) {
        throw Error(ErrorKind::Solver, "Liouvillian is not trace preserving (error " +
                                           std::to_string(liouvillian.trace_annihilation_error()) + ")");
    }
    const SparseMatrix a = bordered_system(liouvillian);
    DenseVector b = DenseVector::Zero(a.rows());
    b[0] = 1.0;

    SteadyState out;
    out.space = liouvillian.space;
    const bool direct = !options.force_iterative &&
                        estimated_factorization_bytes(liouvillian) <= options.memory_cap_bytes;
    std::optional<DenseVector> x;
    if (direct) {
        bool out_of_memory = false;
        try {
            x = solve_direct(a, b);
        } catch (const std::bad_alloc&) {
            out_of_memory = true;
        }
        if (!x && !out_of_memory) {
            throw Error(ErrorKind::NonUniqueSteadyState,
                        "bordered Liouvillian is singular: steady state is not unique");
        }
    }
    if (!x) {
        x = solve_iterative(a, b, options, scale);
        out.method = SolveMethod::IterativeBiCGSTAB;
    }

    out.residual = (liouvillian.matrix * *x).norm();
    out.rho = unvectorize(*x, n);
    out.trace_error = std::abs(out.rho.trace() - Complex(1.0, 0.0));
    out.hermiticity_error = hermiticity(out.rho);
    if (out.residual > options.tolerance * scale) {
        throw Error(ErrorKind::Solver, "steady-state residual " + std::to_string(out.residual) +
                                           " exceeds tolerance " +
                                           std::to_string(options.tolerance * scale));
    }
    const DenseMatrix herm = 0.5 * (out.rho + out.rho.adjoint());
    Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(herm, Eigen::EigenvaluesOnly);
    out.min_eigenvalue = eig.eigenvalues().minCoeff();
    return out;
}

ModelSteadyState solve_model(ModelKind kind, const ModelParams& params, const SolverOptions& options) {
    const Liouvillian l = assemble(kind, params);
    return ModelSteadyState{kind, params, make_layout(kind, params), solve(l, options)};
}

namespace {

std::optional<double> observe(const ModelSteadyState& s, Observable observable) {
    const PhotonStats stats = photon_stats(s);
    if (observable == Observable::PhotonNumber) return stats.n_a;
    return stats.g2;
}

bool agrees(const std::optional<double>& a, const std::optional<double>& b, double tol) {
    if (!a && !b) return true;
    if (!a || !b) return false;
    const double denom = std::max(std::abs(*a), std::abs(*b));
    if (denom == 0.0) return true;
    return std::abs(*a - *b) / denom < tol;
}

}  // namespace

LadderResult converge_state(ModelKind kind, const ModelParams& params, Observable observable,
                            Truncation start, const LadderOptions& options) {
    if (!(options.tolerance > 0.0)) {
        throw Error(ErrorKind::Parameter, "truncation ladder tolerance must be > 0");
    }
    const bool mech = is_oms(kind);
    auto at = [&](Truncation t) {
        ModelParams p = params;
        p.n_cavity = t.n_cavity;
        p.n_mech = t.n_mech;
        return p;
    };

    LadderResult current;
    current.dims = start;
    current.solution = solve_model(kind, at(start), options.solver);
    current.value = observe(current.solution, observable);
    current.solves = 1;
    if (std::isinf(options.tolerance)) return current;

    auto cap_error = [&](const Truncation& t) {
        return Error(ErrorKind::TruncationNonconvergence,
                     "truncation ladder hit its cap at n_cavity=" + std::to_string(t.n_cavity) +
                         (mech ? ", n_mech=" + std::to_string(t.n_mech) : std::string()) + " without converging");
    };

    // Each mode is doubled on its own; only the modes whose doubling still
    // moves the observable advance.
    while (true) {
        const Truncation dims = current.dims;
        Truncation cavity_step = dims;
        cavity_step.n_cavity = std::min(2 * dims.n_cavity, options.max_n_cavity);
        if (cavity_step == dims) throw cap_error(dims);
        Truncation mech_step = dims;
        if (mech) {
            mech_step.n_mech = std::min(2 * dims.n_mech, options.max_n_mech);
            if (mech_step == dims) throw cap_error(dims);
        }

        ModelSteadyState cavity_sol = solve_model(kind, at(cavity_step), options.solver);
        std::optional<double> cavity_value = observe(cavity_sol, observable);
        ++current.solves;
        const bool cavity_ok = agrees(current.value, cavity_value, options.tolerance);

        bool mech_ok = true;
        std::optional<ModelSteadyState> mech_sol;
        std::optional<double> mech_value;
        if (mech) {
            mech_sol = solve_model(kind, at(mech_step), options.solver);
            mech_value = observe(*mech_sol, observable);
            ++current.solves;
            mech_ok = agrees(current.value, mech_value, options.tolerance);
        }

        if (cavity_ok && mech_ok) return current;
        if (!cavity_ok && !mech_ok) {
            current.dims = Truncation{cavity_step.n_cavity, mech_step.n_mech};
            current.solution = solve_model(kind, at(current.dims), options.solver);
            current.value = observe(current.solution, observable);
            ++current.solves;
        } else if (!cavity_ok) {
            current.dims = cavity_step;
            current.solution = std::move(cavity_sol);
            current.value = cavity_value;
        } else {
            current.dims = mech_step;
            current.solution = std::move(*mech_sol);
            current.value = mech_value;
        }
    }
}

ConvergedValue converge_truncation(ModelKind kind, const ModelParams& params, Observable observable,
                                   Truncation start, double tol, const LadderOptions& options) {
    LadderOptions opts = options;
    opts.tolerance = tol;
    const LadderResult r = converge_state(kind, params, observable, start, opts);
    return ConvergedValue{r.dims, r.value};
}

}  // namespace mollow
