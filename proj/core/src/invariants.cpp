#include "mollow/invariants.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include <Eigen/SVD>

#include "mollow/error.hpp"
#include "mollow/liouvillian.hpp"
#include "mollow/observables.hpp"
#include "mollow/oracle.hpp"
#include "mollow/steadystate.hpp"

namespace mollow {

namespace {

constexpr ModelKind kAllKinds[] = {ModelKind::SourceOnly,        ModelKind::CascadedJC,  ModelKind::CascadedOMS,
                                   ModelKind::CascadedJCThermal, ModelKind::ClassicalJC, ModelKind::ClassicalOMS};

ModelParams small_params(ModelKind kind) {
    ModelParams p;
    p.n_cavity = 3;
    p.n_mech = 3;
    p.delta = 1.3;
    if (is_jc(kind)) p.g = 0.4;
    if (is_oms(kind)) p.g_m = 0.3;
    if (kind == ModelKind::CascadedJCThermal) p.n_th = 0.1;
    if (kind == ModelKind::ClassicalJC || kind == ModelKind::ClassicalOMS) p.omega_drive = 0.3;
    return p;
}

DenseMatrix random_matrix(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> d;
    DenseMatrix m(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) m(i, j) = Complex(d(rng), d(rng));
    return m;
}

DenseMatrix random_hermitian(int n, std::mt19937_64& rng) {
    const DenseMatrix m = random_matrix(n, rng);
    return 0.5 * (m + m.adjoint());
}

std::string sci(double v) {
    std::ostringstream s;
    s.precision(3);
    s << std::scientific << v;
    return s.str();
}

CheckResult check(std::string name, const std::function<std::string(bool&)>& body) {
    CheckResult r{std::move(name), false, {}};
    try {
        r.detail = body(r.passed);
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
    }
    return r;
}

}  // namespace

std::vector<CheckResult> run_invariant_suite() {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(20240917);

    out.push_back(check("ladder commutator [a, a^dag] = I below the top level", [](bool& ok) {
        const Operator a = annihilation(6);
        const DenseMatrix c = (a * dagger(a) - dagger(a) * a).dense();
        const double err = (c.topLeftCorner(5, 5) - DenseMatrix::Identity(5, 5)).cwiseAbs().maxCoeff();
        ok = err < 1e-14;
        return "max error " + sci(err);
    }));

    out.push_back(check("vec(A rho B) = left(A) right(B) vec(rho)", [&](bool& ok) {
        const HilbertSpace space{3};
        const DenseMatrix a = random_matrix(3, rng), b = random_matrix(3, rng), rho = random_matrix(3, rng);
        const Operator oa(space, a.sparseView()), ob(space, b.sparseView());
        const DenseVector lhs = vectorize(a * rho * b);
        const DenseVector rhs = (vectorize_left(oa) * vectorize_right(ob)).matrix() * vectorize(rho);
        const double err = (lhs - rhs).cwiseAbs().maxCoeff();
        ok = err < 1e-12;
        return "max error " + sci(err);
    }));

    for (ModelKind kind : kAllKinds) {
        const std::string tag(to_string(kind));
        const ModelParams p = small_params(kind);

        out.push_back(check(tag + ": trace annihilation vec(I)^T L = 0", [&](bool& ok) {
            const Liouvillian l = assemble(kind, p);
            const double err = l.trace_annihilation_error();
            ok = err <= 1e-10 * std::max(1.0, l.max_abs());
            return "error " + sci(err);
        }));

        out.push_back(check(tag + ": Hermiticity preservation", [&](bool& ok) {
            const Liouvillian l = assemble(kind, p);
            const int n = l.space.total_dim();
            const DenseMatrix rho = random_hermitian(n, rng);
            const DenseMatrix drho = unvectorize(l.apply(vectorize(rho)), n);
            const double err = (drho - drho.adjoint()).cwiseAbs().maxCoeff();
            ok = err < 1e-12;
            return "anti-Hermitian part " + sci(err);
        }));

        out.push_back(check(tag + ": superoperator matches direct right-hand side", [&](bool& ok) {
            const Liouvillian l = assemble(kind, p);
            const int n = l.space.total_dim();
            const DenseMatrix rho = random_matrix(n, rng);
            const DenseMatrix direct = master_equation_rhs(kind, p, rho);
            const DenseMatrix super = unvectorize(l.apply(vectorize(rho)), n);
            const double err = (direct - super).cwiseAbs().maxCoeff();
            ok = err < 1e-12;
            return "max difference " + sci(err);
        }));
    }

    out.push_back(check("thermal model at n_th = 0 equals cascaded JC entrywise", [](bool& ok) {
        ModelParams p = small_params(ModelKind::CascadedJC);
        const Liouvillian jc = assemble(ModelKind::CascadedJC, p);
        const Liouvillian th = assemble(ModelKind::CascadedJCThermal, p);
        const double err = DenseMatrix(jc.matrix - th.matrix).cwiseAbs().maxCoeff();
        ok = err <= 1e-15;
        return "max difference " + sci(err);
    }));

    out.push_back(check("source-only excited population 4 mu1 W^2 / (gs^2 + 8 mu1 W^2)", [](bool& ok) {
        ModelParams p;
        p.omega_drive = 0.37;
        p.gamma_s = 0.5;
        const ModelSteadyState s = solve_model(ModelKind::SourceOnly, p);
        const double pe = s.state.rho(1, 1).real();
        const double expected = 4.0 * p.mu1 * p.omega_drive * p.omega_drive /
                                (p.gamma_s * p.gamma_s + 8.0 * p.mu1 * p.omega_drive * p.omega_drive);
        const double err = std::abs(pe - expected);
        ok = err < 1e-12;
        return "population " + sci(pe) + ", expected " + sci(expected);
    }));

    for (ModelKind kind : kAllKinds) {
        if (kind == ModelKind::SourceOnly) continue;
        out.push_back(check(std::string(to_string(kind)) + ": steady state is physical", [&](bool& ok) {
            ModelParams p = small_params(kind);
            p.n_cavity = 5;
            const ModelSteadyState s = solve_model(kind, p);
            const SteadyState& st = s.state;
            ok = st.trace_error <= 1e-10 && st.hermiticity_error <= 1e-10 && st.residual <= 1e-10 &&
                 st.min_eigenvalue >= -1e-8;
            return "trace " + sci(st.trace_error) + ", herm " + sci(st.hermiticity_error) + ", residual " +
                   sci(st.residual) + ", min eig " + sci(st.min_eigenvalue);
        }));
    }

    out.push_back(check("cascaded JC null space is one-dimensional", [](bool& ok) {
        ModelParams p = small_params(ModelKind::CascadedJC);
        const Liouvillian l = assemble(ModelKind::CascadedJC, p);
        Eigen::JacobiSVD<DenseMatrix> svd(DenseMatrix(l.matrix));
        const auto& sv = svd.singularValues();
        int null_dim = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i) null_dim += sv[i] < 1e-10 * sv[0] ? 1 : 0;
        ok = null_dim == 1;
        return "null space dimension " + std::to_string(null_dim);
    }));

    out.push_back(check("g = 0 photon number matches the closed form", [](bool& ok) {
        double worst = 0.0;
        for (double delta : {0.0, 3.0, 5.6568, 11.3137, -17.0}) {
            ModelParams p;
            p.n_cavity = 5;
            p.delta = delta;
            const PhotonStats stats = photon_stats(solve_model(ModelKind::CascadedJC, p));
            const double exact = oracle::na_closed_form(oracle::OracleInput::from(p));
            worst = std::max(worst, std::abs(stats.n_a - exact) / exact);
        }
        ok = worst <= 1e-4;
        return "worst relative error " + sci(worst);
    }));

    return out;
}

}  // namespace mollow
