#include "mollow/observables.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "mollow/error.hpp"

namespace mollow {

namespace {

constexpr std::array<std::pair<NamedWindow, std::string_view>, 5> kWindowNames{{
    {NamedWindow::Center, "center"},
    {NamedWindow::HalfLeft, "half_left"},
    {NamedWindow::HalfRight, "half_right"},
    {NamedWindow::SideLeft, "side_left"},
    {NamedWindow::SideRight, "side_right"},
}};

double refine(std::span<const double> x, std::span<const double> y, std::size_t i) {
    return parabolic_peak(x[i - 1], y[i - 1], x[i], y[i], x[i + 1], y[i + 1]);
}

}  // namespace

std::string_view to_string(StatsClass c) {
    switch (c) {
        case StatsClass::Antibunched: return "antibunched";
        case StatsClass::CoherentLike: return "coherent-like";
        case StatsClass::Bunched: return "bunched";
        case StatsClass::Superbunched: return "superbunched";
    }
    return "unknown";
}

Complex expectation(const DenseMatrix& rho, const Operator& op) {
    if (rho.rows() != op.dim() || rho.cols() != op.dim()) {
        throw Error(ErrorKind::InvalidDimension, "expectation: rho and operator shapes differ");
    }
    Complex sum = 0.0;
    const SparseMatrix& m = op.matrix();
    for (int k = 0; k < m.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
            sum += it.value() * rho(k, it.row());
        }
    }
    return sum;
}

PhotonStats photon_stats(const DenseMatrix& rho, const ModelLayout& layout, double photon_floor) {
    if (!layout.cavity_slot) throw Error(ErrorKind::Configuration, "photon_stats: model has no cavity");
    const Operator a = embed(annihilation(layout.cavity_dim), layout.space, *layout.cavity_slot);
    const Operator ad = dagger(a);
    PhotonStats stats;
    stats.n_a = std::max(0.0, expectation(rho, ad * a).real());
    if (stats.n_a >= photon_floor) {
        const double pairs = expectation(rho, ad * ad * a * a).real();
        stats.g2 = std::max(0.0, pairs) / (stats.n_a * stats.n_a);
    }
    return stats;
}

PhotonStats photon_stats(const ModelSteadyState& solution, double photon_floor) {
    PhotonStats stats = photon_stats(solution.state.rho, solution.layout, photon_floor);
    const ModelParams& p = solution.params;
    stats.probe = ProbeSettings{p.delta, p.delta_s, p.omega_drive, p.mu1, p.n_th};
    return stats;
}

Deviation deviation(const PhotonStats& coupled, const PhotonStats& baseline) {
    if (!(coupled.probe == baseline.probe)) {
        throw Error(ErrorKind::Comparison, "deviation: points were taken at different drive settings");
    }
    Deviation d;
    d.d_na = std::abs(coupled.n_a - baseline.n_a);
    if (coupled.g2 && baseline.g2) d.d_g2 = std::abs(*coupled.g2 - *baseline.g2);
    return d;
}

StatsClass classify(double g2, double coherent_tolerance) {
    if (std::abs(g2 - 1.0) <= coherent_tolerance) return StatsClass::CoherentLike;
    if (g2 < 1.0) return StatsClass::Antibunched;
    if (g2 <= 2.0) return StatsClass::Bunched;
    return StatsClass::Superbunched;
}

std::string_view to_string(NamedWindow w) {
    for (const auto& [k, name] : kWindowNames) {
        if (k == w) return name;
    }
    return "unknown";
}

NamedWindow parse_named_window(std::string_view name) {
    for (const auto& [k, n] : kWindowNames) {
        if (n == name) return k;
    }
    throw Error(ErrorKind::Configuration, "unknown window '" + std::string(name) + "'");
}

double window_detuning(const MollowWindows& w, NamedWindow which) {
    switch (which) {
        case NamedWindow::Center: return w.center;
        case NamedWindow::HalfLeft: return w.half_left;
        case NamedWindow::HalfRight: return w.half_right;
        case NamedWindow::SideLeft: return w.side_left;
        case NamedWindow::SideRight: return w.side_right;
    }
    return w.center;
}

double parabolic_peak(double x0, double y0, double x1, double y1, double x2, double y2) {
    // Divided differences; works on non-uniform grids.
    const double d01 = (y1 - y0) / (x1 - x0);
    const double d12 = (y2 - y1) / (x2 - x1);
    const double curvature = (d12 - d01) / (x2 - x0);
    if (curvature == 0.0) return x1;
    const double vertex = 0.5 * (x0 + x1) - d01 / (2.0 * curvature);
    return std::clamp(vertex, x0, x2);
}

MollowWindows find_mollow_windows(std::span<const double> delta, std::span<const double> n_a) {
    if (delta.size() != n_a.size()) {
        throw Error(ErrorKind::Parameter, "find_mollow_windows: grid and values differ in length");
    }
    if (delta.size() < 5) {
        throw Error(ErrorKind::NotInMollowRegime, "find_mollow_windows: grid too short");
    }
    std::vector<std::size_t> maxima;
    for (std::size_t i = 1; i + 1 < n_a.size(); ++i) {
        if (n_a[i] > n_a[i - 1] && n_a[i] >= n_a[i + 1]) maxima.push_back(i);
    }
    if (maxima.size() < 3) {
        throw Error(ErrorKind::NotInMollowRegime,
                    "found " + std::to_string(maxima.size()) + " local maxima, need 3 for a triplet");
    }
    const std::size_t center = *std::max_element(maxima.begin(), maxima.end(),
                                                  [&](std::size_t a, std::size_t b) { return n_a[a] < n_a[b]; });
    std::optional<std::size_t> left;
    std::optional<std::size_t> right;
    for (std::size_t i : maxima) {
        if (i < center && (!left || n_a[i] > n_a[*left])) left = i;
        if (i > center && (!right || n_a[i] > n_a[*right])) right = i;
    }
    if (!left || !right) {
        throw Error(ErrorKind::NotInMollowRegime, "no side peak on one side of the central maximum");
    }
    MollowWindows w;
    w.center = refine(delta, n_a, center);
    w.side_left = refine(delta, n_a, *left);
    w.side_right = refine(delta, n_a, *right);
    w.half_left = 0.5 * (w.center + w.side_left);
    w.half_right = 0.5 * (w.center + w.side_right);
    return w;
}

}  // namespace mollow
