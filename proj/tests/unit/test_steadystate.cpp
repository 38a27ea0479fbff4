#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "dense_model.hpp"
#include "expect_error.hpp"
#include "mollow/observables.hpp"
#include "mollow/oracle.hpp"
#include "mollow/steadystate.hpp"

using namespace mollow;
using testsupport::expect_error;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

void expect_physical(const SteadyState& s) {
    EXPECT_LE(s.trace_error, 1e-10);
    EXPECT_LE(s.hermiticity_error, 1e-10);
    EXPECT_LE(s.residual, 1e-10);
    EXPECT_GE(s.min_eigenvalue, -1e-8);
}

}  // namespace

TEST(Solve, UndrivenCavityRelaxesToVacuum) {
    ModelParams p;
    p.omega_drive = 0.0;
    p.n_cavity = 4;
    const ModelSteadyState s = solve_model(ModelKind::ClassicalJC, p);
    expect_physical(s.state);
    EXPECT_NEAR(s.state.rho(0, 0).real(), 1.0, 1e-12);
    EXPECT_NEAR(photon_stats(s).n_a, 0.0, 1e-14);
    EXPECT_FALSE(photon_stats(s).g2.has_value());
}

TEST(Solve, SourceOnlyExcitedPopulation) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.01, 10.0);
    for (int k = 0; k < 20; ++k) {
        ModelParams p;
        p.omega_drive = u(rng);
        p.gamma_s = u(rng);
        p.mu1 = u(rng) / 10.0;
        p.mu2 = 1.0 - p.mu1;
        const ModelSteadyState s = solve_model(ModelKind::SourceOnly, p);
        const double w2 = p.omega_drive * p.omega_drive;
        const double expected = 4 * p.mu1 * w2 / (p.gamma_s * p.gamma_s + 8 * p.mu1 * w2);
        EXPECT_NEAR(s.state.rho(1, 1).real(), expected, 1e-12);
    }
}

TEST(Solve, SourceOnlySaturatesAtOneHalf) {
    ModelParams p;
    p.omega_drive = 1e3;
    const ModelSteadyState s = solve_model(ModelKind::SourceOnly, p);
    EXPECT_NEAR(s.state.rho(1, 1).real(), 0.5, 1e-8);
}

TEST(Solve, CascadedJcAtZeroCouplingMatchesClosedForm) {
    for (double delta : {-15.0, -11.3, -4.0, 0.0, 2.5, 5.65, 11.3137, 19.0}) {
        ModelParams p;
        p.delta = delta;
        const PhotonStats stats = photon_stats(solve_model(ModelKind::CascadedJC, p));
        const double exact = oracle::na_closed_form(oracle::OracleInput::from(p));
        EXPECT_LT(rel(stats.n_a, exact), 1e-6) << "delta=" << delta;
    }
}

// Reference values from an independent scipy implementation (column-stacked
// sparse Liouvillian, spsolve on the bordered system).
struct Frozen {
    ModelKind kind;
    double delta, g, g_m, n_th, omega;
    int nc, nm;
    double n_a, g2;
};

TEST(Solve, MatchesIndependentReferenceValues) {
    const Frozen cases[] = {
        {ModelKind::CascadedJC, 0.0, 0.0, 0.0, 0.0, 8.0, 8, 2, 0.009824987539220122, 1.0150736185697948},
        {ModelKind::CascadedJC, 5.65652, 0.0, 0.0, 0.0, 8.0, 8, 2, 0.0001247134227371119, 98.51136970395899},
        {ModelKind::CascadedJC, 5.65652, 0.01, 0.0, 0.0, 8.0, 8, 2, 0.00012471298578902077, 98.43663790677985},
        {ModelKind::CascadedJC, -11.3, 0.01, 0.0, 0.0, 8.0, 8, 2, 0.0048180479745860835, 0.033823013410552334},
        {ModelKind::CascadedJC, 3.0, 0.4, 0.0, 0.0, 8.0, 5, 2, 0.0003112053162558406, 2.0763989329646675},
        {ModelKind::CascadedJCThermal, 2.0, 0.4, 0.0, 0.1, 8.0, 5, 2, 0.10063355644254751, 1.9880348551297191},
        {ModelKind::CascadedOMS, 5.65652, 0.0, 0.3, 0.0, 8.0, 4, 4, 0.00013113438054799934, 86.46839470459831},
        {ModelKind::CascadedOMS, -3.0, 0.0, 0.2, 0.0, 8.0, 4, 6, 0.00030038536051153606, 2.147259439760742},
    };
    for (const auto& c : cases) {
        ModelParams p;
        p.delta = c.delta;
        p.g = c.g;
        p.g_m = c.g_m;
        p.n_th = c.n_th;
        p.omega_drive = c.omega;
        p.n_cavity = c.nc;
        p.n_mech = c.nm;
        const ModelSteadyState s = solve_model(c.kind, p);
        expect_physical(s.state);
        const PhotonStats stats = photon_stats(s);
        EXPECT_LT(rel(stats.n_a, c.n_a), 1e-9) << to_string(c.kind) << " delta=" << c.delta;
        ASSERT_TRUE(stats.g2.has_value());
        EXPECT_LT(rel(*stats.g2, c.g2), 1e-9) << to_string(c.kind) << " delta=" << c.delta;
    }
}

TEST(Solve, ClassicalMatchesIndependentReferenceValues) {
    ModelParams jc;
    jc.delta = 1.0;
    jc.g = 0.5;
    jc.omega_drive = 0.3;
    jc.n_cavity = 6;
    EXPECT_LT(rel(photon_stats(solve_model(ModelKind::ClassicalJC, jc)).n_a, 0.10852378679780679), 1e-9);

    ModelParams oms;
    oms.delta = 0.5;
    oms.g_m = 0.4;
    oms.omega_drive = 0.1;
    oms.n_cavity = 5;
    oms.n_mech = 5;
    EXPECT_LT(rel(photon_stats(solve_model(ModelKind::ClassicalOMS, oms)).n_a, 0.021217096644967834), 1e-9);
}

TEST(Solve, MatchesDenseNullVector) {
    ModelParams p;
    p.n_cavity = 3;
    p.g = 0.3;
    p.delta = 1.7;
    const ModelSteadyState s = solve_model(ModelKind::CascadedJC, p);
    const testsupport::DenseModel m = testsupport::build(ModelKind::CascadedJC, p);
    const DenseMatrix reference = testsupport::dense_steady_state(m);
    EXPECT_LT((s.state.rho - reference).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Solve, ClassicalOmsWeakDriveLorentzian) {
    ModelParams p;
    p.omega_drive = 0.02;
    p.n_cavity = 6;
    p.n_mech = 3;
    const PhotonStats stats = photon_stats(solve_model(ModelKind::ClassicalOMS, p));
    EXPECT_LT(rel(stats.n_a, 4 * 0.02 * 0.02), 1e-10);
    ASSERT_TRUE(stats.g2.has_value());
    EXPECT_NEAR(*stats.g2, 1.0, 1e-8);
}

TEST(Solve, IterativePathAgreesWithDirect) {
    ModelParams p;
    p.n_cavity = 4;
    p.g = 0.2;
    p.delta = 3.0;
    const Liouvillian l = assemble(ModelKind::CascadedJC, p);
    SolverOptions iterative;
    iterative.force_iterative = true;
    const SteadyState a = solve(l);
    const SteadyState b = solve(l, iterative);
    EXPECT_EQ(a.method, SolveMethod::DirectLU);
    EXPECT_EQ(b.method, SolveMethod::IterativeBiCGSTAB);
    EXPECT_LE(b.residual, 1e-10);
    EXPECT_LT((a.rho - b.rho).cwiseAbs().maxCoeff(), 1e-9);

    SolverOptions capped;
    capped.memory_cap_bytes = 0;
    EXPECT_EQ(solve(l, capped).method, SolveMethod::IterativeBiCGSTAB);
}

TEST(Solve, Deterministic) {
    ModelParams p;
    p.n_cavity = 5;
    p.g = 0.1;
    p.delta = -6.0;
    const SteadyState a = solve_model(ModelKind::CascadedJC, p).state;
    const SteadyState b = solve_model(ModelKind::CascadedJC, p).state;
    EXPECT_EQ(a.rho, b.rho);
}

TEST(Solve, RejectsNonTracePreserving) {
    Liouvillian l = zero_liouvillian(HilbertSpace{2});
    SparseMatrix m(4, 4);
    m.insert(0, 0) = 1.0;
    l.matrix = m;
    expect_error(ErrorKind::Solver, [&] { solve(l); });
}

TEST(Solve, DegenerateManifoldIsNonUnique) {
    // No dissipation and no Hamiltonian: every state is stationary.
    const Liouvillian l = coherent_part(zero(HilbertSpace{3}));
    expect_error(ErrorKind::NonUniqueSteadyState, [&] { solve(l); });
}

TEST(Solve, UniqueNullSpaceForReferenceParameterSets) {
    ModelParams jc;
    jc.n_cavity = 3;
    jc.g = 0.01;
    EXPECT_EQ(testsupport::null_space_dimension(
                  testsupport::superoperator(testsupport::build(ModelKind::CascadedJC, jc))),
              1);
    ModelParams th = jc;
    th.n_th = 0.2;
    EXPECT_EQ(testsupport::null_space_dimension(
                  testsupport::superoperator(testsupport::build(ModelKind::CascadedJCThermal, th))),
              1);
    ModelParams oms;
    oms.n_cavity = 3;
    oms.n_mech = 3;
    oms.g_m = 0.01;
    EXPECT_EQ(testsupport::null_space_dimension(
                  testsupport::superoperator(testsupport::build(ModelKind::CascadedOMS, oms))),
              1);
}

TEST(Ladder, InfiniteToleranceReturnsStart) {
    ModelParams p;
    const Truncation start{5, 12};
    const ConvergedValue v = converge_truncation(ModelKind::CascadedJC, p, Observable::PhotonNumber, start,
                                                 std::numeric_limits<double>::infinity());
    EXPECT_EQ(v.dims, start);
    ASSERT_TRUE(v.value.has_value());
}

TEST(Ladder, WeakCascadedFeedNeedsAtMostEightLevels) {
    for (double delta : {0.0, 5.65, 11.31}) {
        ModelParams p;
        p.delta = delta;
        const ConvergedValue v =
            converge_truncation(ModelKind::CascadedJC, p, Observable::PhotonNumber, {4, 2}, 1e-6);
        EXPECT_LE(v.dims.n_cavity, 8) << "delta=" << delta;
    }
}

TEST(Ladder, ClassicalOmsWeakDrive) {
    ModelParams p;
    p.omega_drive = 0.02;
    const ConvergedValue v =
        converge_truncation(ModelKind::ClassicalOMS, p, Observable::PhotonNumber, {3, 3}, 1e-8);
    // Three levels miss |3> at the 1e-6 level, so the ladder settles at 6.
    EXPECT_EQ(v.dims.n_cavity, 6);
    EXPECT_EQ(v.dims.n_mech, 3);
    ASSERT_TRUE(v.value.has_value());
    EXPECT_LT(rel(*v.value, 1.6e-3), 1e-8);
}

TEST(Ladder, OnlyUnconvergedModeAdvances) {
    ModelParams p;
    p.g_m = 0.3;
    p.delta = 5.65652;
    LadderOptions opts;
    opts.tolerance = 1e-6;
    const LadderResult r = converge_state(ModelKind::CascadedOMS, p, Observable::G2, {4, 4}, opts);
    EXPECT_EQ(r.dims.n_cavity, 4);
    EXPECT_GE(r.dims.n_mech, 8);
}

TEST(Ladder, CapExceeded) {
    ModelParams p;
    p.omega_drive = 3.0;  // strong classical drive: many photons
    LadderOptions opts;
    opts.max_n_cavity = 8;
    expect_error(ErrorKind::TruncationNonconvergence,
                 [&] { converge_state(ModelKind::ClassicalJC, p, Observable::PhotonNumber, {4, 2}, opts); });
}

TEST(Ladder, RejectsNonPositiveTolerance) {
    ModelParams p;
    expect_error(ErrorKind::Parameter,
                 [&] { converge_truncation(ModelKind::CascadedJC, p, Observable::G2, {4, 2}, 0.0); });
}
