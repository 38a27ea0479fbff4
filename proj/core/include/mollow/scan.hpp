#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mollow/config.hpp"
#include "mollow/error.hpp"
#include "mollow/observables.hpp"

namespace mollow {

struct ScanRow {
    double axis = 0.0;
    double n_a = 0.0;
    std::optional<double> g2;
    std::optional<double> d_na;
    std::optional<double> d_g2;
    double residual = 0.0;
    int n_cavity = 0;
    int n_mech = 0;  // 0 when the model has no mechanical mode

    // Not part of the CSV; kept for JSON, plots and physicality checks.
    std::optional<double> baseline_n_a;
    std::optional<double> baseline_g2;
    double trace_error = 0.0;
    double hermiticity_error = 0.0;
    double min_eigenvalue = 0.0;
};

struct ScanMetadata {
    std::string config_echo;
    std::string version;
    double wall_time_seconds = 0.0;
    bool failed = false;
    std::string failure;
    std::optional<double> failed_axis_value;
    std::optional<MollowWindows> windows;  // set when a calibration scan ran
    std::optional<double> window_delta;    // detuning used for g / g_m / n_th sweeps
};

struct ScanResult {
    Axis axis = Axis::Delta;
    std::vector<ScanRow> rows;
    ScanMetadata metadata;
};

// Thrown by run_scan when a grid point fails; carries the rows that finished.
class ScanFailure : public Error {
public:
    ScanFailure(const std::string& message, ScanResult partial)
        : Error(ErrorKind::Scan, message), partial_(std::move(partial)) {}
    const ScanResult& partial() const noexcept { return partial_; }

private:
    ScanResult partial_;
};

std::string library_version();

// Parameters of one grid point: axis value applied, window detuning applied
// for non-delta sweeps.
ModelParams point_params(const ScanConfig& config, double axis_value, double window_delta);

// Same point with the target's internal coupling switched off.
ModelParams baseline_params(ModelKind kind, const ModelParams& params);

// Runs the g = 0 delta scan over config.calibration and locates the windows.
struct Calibration {
    ScanResult spectrum;
    MollowWindows windows;
};
Calibration calibrate(const ScanConfig& config);

MollowWindows find_mollow_windows(const ScanResult& scan);

// One steady-state solve (or truncation ladder) per grid point, in a bounded
// worker pool. Rows come back in grid order independent of worker count.
ScanResult run_scan(const ScanConfig& config);

}  // namespace mollow
