#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "mollow/hilbert.hpp"
#include "mollow/steadystate.hpp"

namespace mollow {

inline constexpr double kDefaultPhotonFloor = 1e-12;

// Drive-side settings two PhotonStats must share to be compared.
struct ProbeSettings {
    double delta = 0.0;
    double delta_s = 0.0;
    double omega_drive = 0.0;
    double mu1 = 0.0;
    double n_th = 0.0;
    friend bool operator==(const ProbeSettings&, const ProbeSettings&) = default;
};

struct PhotonStats {
    double n_a = 0.0;
    std::optional<double> g2;  // absent when n_a is below the floor
    ProbeSettings probe;
};

struct Deviation {
    double d_na = 0.0;
    std::optional<double> d_g2;
};

enum class StatsClass { Antibunched, CoherentLike, Bunched, Superbunched };

std::string_view to_string(StatsClass c);

// Tr(op rho).
Complex expectation(const DenseMatrix& rho, const Operator& op);

// <a^dag a> and <a^dag a^dag a a> / <a^dag a>^2 for the cavity of the model.
PhotonStats photon_stats(const DenseMatrix& rho, const ModelLayout& layout,
                         double photon_floor = kDefaultPhotonFloor);
PhotonStats photon_stats(const ModelSteadyState& solution, double photon_floor = kDefaultPhotonFloor);

// Pointwise |n_a(g) - n_a(0)| and |g2(g) - g2(0)|. Throws Comparison when the
// two points were not taken at the same drive settings.
Deviation deviation(const PhotonStats& coupled, const PhotonStats& baseline);

StatsClass classify(double g2, double coherent_tolerance = 0.05);

struct MollowWindows {
    double center = 0.0;
    double side_left = 0.0;
    double side_right = 0.0;
    double half_left = 0.0;
    double half_right = 0.0;
};

enum class NamedWindow { Center, HalfLeft, HalfRight, SideLeft, SideRight };

std::string_view to_string(NamedWindow w);
NamedWindow parse_named_window(std::string_view name);
double window_detuning(const MollowWindows& windows, NamedWindow which);

// Vertex of the parabola through three points (x0 < x1 < x2).
double parabolic_peak(double x0, double y0, double x1, double y1, double x2, double y2);

// Locates the triplet in a g = 0 emission spectrum n_a(delta): center at the
// global maximum, side peaks at the highest local maximum on each side,
// refined by parabolic interpolation. Throws NotInMollowRegime when either
// side has no local maximum.
MollowWindows find_mollow_windows(std::span<const double> delta, std::span<const double> n_a);

}  // namespace mollow
