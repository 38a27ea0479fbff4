#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "expect_error.hpp"
#include "mollow/observables.hpp"
#include "mollow/steadystate.hpp"

using namespace mollow;
using testsupport::expect_error;

namespace {

ModelLayout cavity_only_layout(int nc) {
    ModelParams p;
    p.n_cavity = nc;
    return make_layout(ModelKind::ClassicalJC, p);  // [nc, 2]
}

// rho_cavity (x) |g><g| on the ClassicalJC layout.
DenseMatrix with_ground_atom(const DenseMatrix& cavity) {
    const int nc = static_cast<int>(cavity.rows());
    DenseMatrix rho = DenseMatrix::Zero(2 * nc, 2 * nc);
    for (int i = 0; i < nc; ++i)
        for (int j = 0; j < nc; ++j) rho(2 * i, 2 * j) = cavity(i, j);
    return rho;
}

PhotonStats stats_at(ModelKind kind, ModelParams p) { return photon_stats(solve_model(kind, p)); }

}  // namespace

TEST(Expectation, BasicValues) {
    const Operator a = annihilation(4);
    const Operator n = dagger(a) * a;
    DenseMatrix vacuum = DenseMatrix::Zero(4, 4);
    vacuum(0, 0) = 1.0;
    EXPECT_EQ(expectation(vacuum, n), Complex(0.0));
    EXPECT_EQ(expectation(vacuum, identity(HilbertSpace{4})), Complex(1.0));
    DenseMatrix one = DenseMatrix::Zero(4, 4);
    one(1, 1) = 1.0;
    EXPECT_NEAR(expectation(one, n).real(), 1.0, 1e-15);
    expect_error(ErrorKind::InvalidDimension, [&] { expectation(DenseMatrix::Zero(3, 3), n); });
}

TEST(PhotonStatsTest, FockStateIsAntibunchedToZero) {
    DenseMatrix cav = DenseMatrix::Zero(5, 5);
    cav(1, 1) = 1.0;
    const PhotonStats s = photon_stats(with_ground_atom(cav), cavity_only_layout(5));
    EXPECT_NEAR(s.n_a, 1.0, 1e-15);
    ASSERT_TRUE(s.g2.has_value());
    EXPECT_NEAR(*s.g2, 0.0, 1e-15);
}

TEST(PhotonStatsTest, ThermalStateHasG2Two) {
    const int nc = 80;
    const double nbar = 0.3, q = nbar / (1 + nbar);
    DenseMatrix cav = DenseMatrix::Zero(nc, nc);
    for (int k = 0; k < nc; ++k) cav(k, k) = (1 - q) * std::pow(q, k);
    const PhotonStats s = photon_stats(with_ground_atom(cav), cavity_only_layout(nc));
    EXPECT_NEAR(s.n_a, nbar, 1e-12);
    ASSERT_TRUE(s.g2.has_value());
    EXPECT_NEAR(*s.g2, 2.0, 1e-10);
}

TEST(PhotonStatsTest, CoherentDriveGivesG2One) {
    ModelParams p;
    p.omega_drive = 0.1;
    p.delta = 0.4;
    p.n_cavity = 10;
    const PhotonStats s = stats_at(ModelKind::ClassicalJC, p);
    ASSERT_TRUE(s.g2.has_value());
    EXPECT_NEAR(*s.g2, 1.0, 1e-9);
}

TEST(PhotonStatsTest, G2AbsentBelowFloor) {
    DenseMatrix cav = DenseMatrix::Zero(3, 3);
    cav(0, 0) = 1.0 - 1e-13;
    cav(1, 1) = 1e-13;
    const ModelLayout layout = cavity_only_layout(3);
    EXPECT_FALSE(photon_stats(with_ground_atom(cav), layout).g2.has_value());
    EXPECT_TRUE(photon_stats(with_ground_atom(cav), layout, 1e-14).g2.has_value());
}

TEST(PhotonStatsTest, ProbeRecordsDriveSettings) {
    ModelParams p;
    p.n_cavity = 3;
    p.delta = 2.0;
    p.g = 0.1;
    const PhotonStats s = stats_at(ModelKind::CascadedJC, p);
    EXPECT_EQ(s.probe.delta, 2.0);
    EXPECT_EQ(s.probe.omega_drive, 8.0);
    EXPECT_EQ(s.probe.mu1, 0.5);
}

TEST(DeviationTest, IdenticalStatsGiveZero) {
    PhotonStats s{0.1, 1.3, {}};
    const Deviation d = deviation(s, s);
    EXPECT_EQ(d.d_na, 0.0);
    ASSERT_TRUE(d.d_g2.has_value());
    EXPECT_EQ(*d.d_g2, 0.0);
}

TEST(DeviationTest, AbsoluteDifferences) {
    PhotonStats a{0.1, 1.3, {}}, b{0.25, 0.9, {}};
    const Deviation d = deviation(a, b);
    EXPECT_DOUBLE_EQ(d.d_na, 0.15);
    EXPECT_DOUBLE_EQ(*d.d_g2, 0.4);
    PhotonStats c{0.1, std::nullopt, {}};
    EXPECT_FALSE(deviation(a, c).d_g2.has_value());
}

TEST(DeviationTest, MismatchedSettingsRejected) {
    PhotonStats a{0.1, 1.3, {}}, b{0.1, 1.3, {}};
    b.probe.delta = 1.0;
    expect_error(ErrorKind::Comparison, [&] { deviation(a, b); });
    b.probe = {};
    b.probe.n_th = 0.05;
    expect_error(ErrorKind::Comparison, [&] { deviation(a, b); });
}

TEST(Classify, Bands) {
    EXPECT_EQ(classify(0.2), StatsClass::Antibunched);
    EXPECT_EQ(classify(0.949), StatsClass::Antibunched);
    EXPECT_EQ(classify(0.9501), StatsClass::CoherentLike);
    EXPECT_EQ(classify(1.0), StatsClass::CoherentLike);
    EXPECT_EQ(classify(1.0499), StatsClass::CoherentLike);
    EXPECT_EQ(classify(1.06), StatsClass::Bunched);
    EXPECT_EQ(classify(2.0), StatsClass::Bunched);
    EXPECT_EQ(classify(2.0001), StatsClass::Superbunched);
    EXPECT_EQ(classify(1.015, 0.01), StatsClass::Bunched);
    EXPECT_EQ(to_string(StatsClass::CoherentLike), "coherent-like");
}

TEST(Classify, CascadedJcWindowsAtZeroCoupling) {
    ModelParams p;
    auto g2_at = [&](double delta) {
        p.delta = delta;
        return *stats_at(ModelKind::CascadedJC, p).g2;
    };
    // Center g2 is only about 1.5% above one; the default band calls it coherent-like.
    const double center = g2_at(0.0);
    EXPECT_GT(center, 1.0);
    EXPECT_EQ(classify(center), StatsClass::CoherentLike);
    EXPECT_EQ(classify(center, 0.01), StatsClass::Bunched);
    EXPECT_EQ(classify(g2_at(11.3137)), StatsClass::Antibunched);
    EXPECT_EQ(classify(g2_at(-11.3137)), StatsClass::Antibunched);
    EXPECT_EQ(classify(g2_at(5.65685)), StatsClass::Superbunched);
    EXPECT_EQ(classify(g2_at(-5.65685)), StatsClass::Superbunched);
}

TEST(ParabolicPeak, ExactOnParabola) {
    auto f = [](double x) { return -2.0 * (x - 0.37) * (x - 0.37) + 4.0; };
    EXPECT_NEAR(parabolic_peak(0.0, f(0.0), 0.5, f(0.5), 1.0, f(1.0)), 0.37, 1e-14);
    EXPECT_NEAR(parabolic_peak(-1.0, f(-1.0), 0.1, f(0.1), 0.5, f(0.5)), 0.37, 1e-13);
    // Vertex outside the bracket is clamped.
    EXPECT_EQ(parabolic_peak(-1.0, f(-1.0), 0.1, f(0.1), 0.3, f(0.3)), 0.3);
}

TEST(MollowWindowsTest, SyntheticTriplet) {
    std::vector<double> x, y;
    for (int k = 0; k <= 400; ++k) {
        const double d = -20.0 + 0.1 * k;
        x.push_back(d);
        y.push_back(3.0 / (1 + d * d) + 1.0 / (1 + (d - 9.03) * (d - 9.03)) +
                    1.0 / (1 + (d + 9.03) * (d + 9.03)));
    }
    const MollowWindows w = find_mollow_windows(x, y);
    EXPECT_NEAR(w.center, 0.0, 1e-9);
    EXPECT_NEAR(w.side_right, 9.03, 0.05);
    EXPECT_NEAR(w.side_left, -9.03, 0.05);
    EXPECT_DOUBLE_EQ(w.half_right, 0.5 * (w.center + w.side_right));
    EXPECT_DOUBLE_EQ(w.half_left, 0.5 * (w.center + w.side_left));
    EXPECT_EQ(window_detuning(w, NamedWindow::HalfRight), w.half_right);
    EXPECT_EQ(window_detuning(w, NamedWindow::SideLeft), w.side_left);
}

TEST(MollowWindowsTest, SinglePeakIsNotMollow) {
    std::vector<double> x, y;
    for (int k = 0; k <= 200; ++k) {
        const double d = -10.0 + 0.1 * k;
        x.push_back(d);
        y.push_back(1.0 / (1 + d * d));
    }
    expect_error(ErrorKind::NotInMollowRegime, [&] { find_mollow_windows(x, y); });
}

TEST(MollowWindowsTest, CascadedSpectrumSidePeaksAtGeneralizedRabi) {
    ModelParams p;
    p.n_cavity = 4;
    std::vector<double> x, y;
    for (int k = 0; k <= 400; ++k) {
        p.delta = -20.0 + 0.1 * k;
        x.push_back(p.delta);
        y.push_back(stats_at(ModelKind::CascadedJC, p).n_a);
    }
    const MollowWindows w = find_mollow_windows(x, y);
    const double rabi = 2.0 * std::sqrt(0.5) * 8.0;
    EXPECT_NEAR(w.center, 0.0, 1e-6);
    EXPECT_NEAR(w.side_right, rabi, 0.1);
    EXPECT_NEAR(w.side_left, -rabi, 0.1);
    EXPECT_NEAR(w.side_right, -w.side_left, 1e-6);
}

TEST(MollowWindowsTest, UnresolvedTripletRejected) {
    ModelParams p;
    p.n_cavity = 3;
    p.mu1 = 1e-6;
    p.mu2 = 1.0 - p.mu1;
    std::vector<double> x, y;
    for (int k = 0; k <= 200; ++k) {
        p.delta = -20.0 + 0.2 * k;
        x.push_back(p.delta);
        y.push_back(stats_at(ModelKind::CascadedJC, p).n_a);
    }
    expect_error(ErrorKind::NotInMollowRegime, [&] { find_mollow_windows(x, y); });
}

TEST(NamedWindowTest, ParseRoundTrip) {
    for (NamedWindow w : {NamedWindow::Center, NamedWindow::HalfLeft, NamedWindow::HalfRight,
                          NamedWindow::SideLeft, NamedWindow::SideRight}) {
        EXPECT_EQ(parse_named_window(to_string(w)), w);
    }
    expect_error(ErrorKind::Configuration, [] { parse_named_window("middle"); });
}

TEST(Symmetry, JcSpectraSymmetricAboutZero) {
    ModelParams p;
    p.n_cavity = 4;
    p.g = 0.3;
    for (double d : {0.7, 3.2, 5.65, 11.3, 17.9}) {
        p.delta = d;
        const PhotonStats plus = stats_at(ModelKind::CascadedJC, p);
        p.delta = -d;
        const PhotonStats minus = stats_at(ModelKind::CascadedJC, p);
        EXPECT_LT(std::abs(plus.n_a - minus.n_a), 1e-8 * plus.n_a);
        EXPECT_LT(std::abs(*plus.g2 - *minus.g2), 1e-8 * *plus.g2);
    }
}

TEST(Symmetry, OmsSpectraAsymmetric) {
    ModelParams p;
    p.n_cavity = 4;
    p.n_mech = 4;
    p.g_m = 0.3;
    double worst = 0.0;
    for (double d : {0.7, 3.2, 5.65, 11.3}) {
        p.delta = d;
        const double plus = stats_at(ModelKind::CascadedOMS, p).n_a;
        p.delta = -d;
        const double minus = stats_at(ModelKind::CascadedOMS, p).n_a;
        worst = std::max(worst, std::abs(plus - minus) / plus);
    }
    EXPECT_GT(worst, 1e-6);
}

TEST(Sensitivity, StatisticsBeatPopulationAtHalfway) {
    for (double g : {0.001, 0.01, 0.1}) {
        ModelParams p;
        p.n_cavity = 4;
        p.delta = 5.65652;
        const PhotonStats base = stats_at(ModelKind::CascadedJC, p);
        p.g = g;
        const PhotonStats coupled = stats_at(ModelKind::CascadedJC, p);
        const Deviation d = deviation(coupled, base);
        EXPECT_GT(*d.d_g2 / *base.g2, d.d_na / base.n_a) << "g=" << g;
    }
}
