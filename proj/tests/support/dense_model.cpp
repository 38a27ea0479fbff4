#include "dense_model.hpp"

#include <cmath>
#include <stdexcept>

namespace testsupport {

using mollow::ModelKind;

Mat dense_kron(const Mat& a, const Mat& b) {
    Mat out = Mat::Zero(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            for (Eigen::Index k = 0; k < b.rows(); ++k)
                for (Eigen::Index l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

Mat dense_destroy(int n) {
    Mat m = Mat::Zero(n, n);
    for (int k = 1; k < n; ++k) m(k - 1, k) = std::sqrt(static_cast<double>(k));
    return m;
}

Mat dense_sigma() { return dense_destroy(2); }

namespace {

Mat lift(const std::vector<int>& dims, std::size_t slot, const Mat& op) {
    Mat out = Mat::Identity(1, 1);
    for (std::size_t k = 0; k < dims.size(); ++k) {
        out = dense_kron(out, k == slot ? op : Mat(Mat::Identity(dims[k], dims[k])));
    }
    return out;
}

Mat dag(const Mat& m) { return m.adjoint(); }

Mat lindblad(const Mat& o, const Mat& rho) {
    const Mat odo = dag(o) * o;
    return o * rho * dag(o) - 0.5 * (odo * rho + rho * odo);
}

}  // namespace

DenseModel build(ModelKind kind, const mollow::ModelParams& p) {
    DenseModel m;
    const bool source = kind == ModelKind::SourceOnly || kind == ModelKind::CascadedJC ||
                        kind == ModelKind::CascadedOMS || kind == ModelKind::CascadedJCThermal;
    const bool jc = kind == ModelKind::CascadedJC || kind == ModelKind::CascadedJCThermal ||
                    kind == ModelKind::ClassicalJC;
    const bool oms = kind == ModelKind::CascadedOMS || kind == ModelKind::ClassicalOMS;

    if (kind == ModelKind::SourceOnly) {
        m.dims = {2};
        const Mat s = dense_sigma();
        m.s = s;
        m.hamiltonian = p.delta_s * dag(s) * s + std::sqrt(p.mu1) * p.omega_drive * (s + dag(s));
        m.jumps.push_back({p.gamma_s, s});
        return m;
    }

    if (source) m.dims.push_back(2);
    m.dims.push_back(p.n_cavity);
    m.dims.push_back(jc ? 2 : p.n_mech);
    const std::size_t cav = source ? 1 : 0;
    const std::size_t mat = cav + 1;

    const Mat a = lift(m.dims, cav, dense_destroy(p.n_cavity));
    m.a = a;
    const double delta_a = p.delta_a.value_or(p.delta);
    Mat h = p.delta * dag(a) * a;
    if (jc) {
        const Mat sig = lift(m.dims, mat, dense_sigma());
        h += delta_a * dag(sig) * sig + p.g * (dag(sig) * a + sig * dag(a));
        m.jumps.push_back({p.gamma * (p.n_th + 1.0), sig});
        if (p.n_th > 0) m.jumps.push_back({p.gamma * p.n_th, dag(sig)});
    }
    if (oms) {
        const Mat b = lift(m.dims, mat, dense_destroy(p.n_mech));
        h += p.omega_m * dag(b) * b + p.g_m * dag(a) * a * (b + dag(b));
        m.jumps.push_back({p.gamma_m, b});
    }
    m.jumps.push_back({p.kappa * (p.n_th + 1.0), a});
    if (p.n_th > 0) m.jumps.push_back({p.kappa * p.n_th, dag(a)});

    if (source) {
        const Mat s = lift(m.dims, 0, dense_sigma());
        m.s = s;
        h += p.delta_s * dag(s) * s + std::sqrt(p.mu1) * p.omega_drive * (s + dag(s));
        m.jumps.push_back({p.gamma_s * (p.n_th + 1.0), s});
        if (p.n_th > 0) m.jumps.push_back({p.gamma_s * p.n_th, dag(s)});
        m.cascade = std::sqrt(p.mu2 * p.gamma_s * p.kappa);
        m.n_th = p.n_th;
    } else {
        h += p.omega_drive * (a + dag(a));
    }
    m.hamiltonian = h;
    return m;
}

Mat rhs(const DenseModel& m, const Mat& rho) {
    const cd i(0.0, 1.0);
    Mat out = -i * (m.hamiltonian * rho - rho * m.hamiltonian);
    for (const auto& [rate, o] : m.jumps) out += rate * lindblad(o, rho);
    if (m.cascade != 0.0 && m.a.size() > 0) {
        const Mat& a = m.a;
        const Mat& s = m.s;
        const Mat ad = dag(a), sd = dag(s);
        // [a^dag, s rho] + [rho s^dag, a]
        const Mat t1 = ad * s * rho - s * rho * ad + rho * sd * a - a * rho * sd;
        // [a, s^dag rho] + [rho s, a^dag]
        const Mat t2 = a * sd * rho - sd * rho * a + rho * s * ad - ad * rho * s;
        out -= m.cascade * ((m.n_th + 1.0) * t1 + m.n_th * t2);
    }
    return out;
}

Mat superoperator(const DenseModel& m) {
    const int n = m.total();
    Mat sup = Mat::Zero(n * n, n * n);
    for (int col = 0; col < n; ++col) {
        for (int row = 0; row < n; ++row) {
            Mat basis = Mat::Zero(n, n);
            basis(row, col) = 1.0;
            const Mat image = rhs(m, basis);
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) sup(k + n * j, row + n * col) = image(k, j);
        }
    }
    return sup;
}

Mat dense_steady_state(const DenseModel& m) {
    const int n = m.total();
    Mat sup = superoperator(m);
    for (int k = 0; k < n * n; ++k) sup(0, k) = 0.0;
    for (int k = 0; k < n; ++k) sup(0, k + n * k) = 1.0;
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n * n);
    b(0) = 1.0;
    const Eigen::VectorXcd x = sup.fullPivLu().solve(b);
    Mat rho(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) rho(k, j) = x(k + n * j);
    return rho;
}

int null_space_dimension(const Mat& superop, double rel_tol) {
    Eigen::JacobiSVD<Mat> svd(superop);
    const auto& sv = svd.singularValues();
    int count = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) count += sv(k) < rel_tol * sv(0) ? 1 : 0;
    return count;
}

double photon_number(const DenseModel& m, const Mat& rho) { return (dag(m.a) * m.a * rho).trace().real(); }

double g2(const DenseModel& m, const Mat& rho) {
    const double n = photon_number(m, rho);
    return (dag(m.a) * dag(m.a) * m.a * m.a * rho).trace().real() / (n * n);
}

}  // namespace testsupport
