#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mollow/model.hpp"
#include "mollow/observables.hpp"
#include "mollow/steadystate.hpp"

namespace mollow {

enum class Axis { Delta, G, GM, NTh };
enum class Spacing { Linear, Log };
enum class TruncationMode { Fixed, Ladder };

std::string_view to_string(Axis axis);
Axis parse_axis(std::string_view name);

struct Grid {
    double min = -20.0;
    double max = 20.0;
    int count = 401;
    Spacing spacing = Spacing::Linear;

    void validate(std::string_view what) const;
    std::vector<double> points() const;
};

// Fixed detuning for sweeps over g, g_m or n_th. Empty means params.delta.
struct WindowSelection {
    std::optional<double> delta;
    std::optional<NamedWindow> named;

    bool empty() const { return !delta && !named; }
};

struct TruncationPolicy {
    TruncationMode mode = TruncationMode::Fixed;
    double tolerance = 1e-6;
    Observable observable = Observable::G2;
    int max_n_cavity = 64;
    int max_n_mech = 48;
};

struct ScanConfig {
    ModelKind model = ModelKind::CascadedJC;
    ModelParams params;
    Axis axis = Axis::Delta;
    Grid grid;
    WindowSelection window;
    Grid calibration;  // g = 0 delta scan used to resolve named windows
    bool deviations = false;
    TruncationPolicy truncation;
    SolverOptions solver;
    int workers = 1;
    std::string output_dir = ".";
    std::string output_name = "scan";
    std::string format = "csv";

    void validate() const;
};

// Default Fock truncations: 8 for cascaded cavities, 4 for classical weak
// drive, 12 for the mechanical mode.
Truncation default_truncation(ModelKind kind);

// Default sweep grid for an axis: 401 points on [-20, 20] for delta,
// 21 log-spaced points on [1e-3, 1e-1] for couplings, {0 .. 0.2} for n_th.
Grid default_grid(Axis axis);

// Flat "key = value" text, '#' starts a comment. Unknown or repeated keys
// are configuration errors.
ScanConfig parse_config(std::string_view text);
ScanConfig load_config(const std::string& path);

// Applies a single "key=value" override on top of an existing config.
void apply_override(ScanConfig& config, std::string_view assignment);

// Canonical text with every key; parse_config(serialize_config(c)) reproduces c.
std::string serialize_config(const ScanConfig& config);

}  // namespace mollow
