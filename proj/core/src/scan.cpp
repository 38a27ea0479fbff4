#include "mollow/scan.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <thread>

#include "mollow/format.hpp"

#ifndef MOLLOW_VERSION
#define MOLLOW_VERSION "0.0.0"
#endif

namespace mollow {

namespace {

struct PointSolution {
    Truncation dims;
    ModelSteadyState solution;
    PhotonStats stats;
};

PointSolution solve_point(ModelKind kind, const ModelParams& params, Truncation start,
                          const ScanConfig& config, std::optional<Observable> observable = std::nullopt) {
    ModelParams p = params;
    p.n_cavity = start.n_cavity;
    p.n_mech = start.n_mech;
    if (config.truncation.mode == TruncationMode::Fixed) {
        ModelSteadyState s = solve_model(kind, p, config.solver);
        PhotonStats stats = photon_stats(s);
        return {start, std::move(s), stats};
    }
    LadderOptions opts;
    opts.tolerance = config.truncation.tolerance;
    opts.max_n_cavity = config.truncation.max_n_cavity;
    opts.max_n_mech = config.truncation.max_n_mech;
    opts.solver = config.solver;
    LadderResult r = converge_state(kind, p, observable.value_or(config.truncation.observable), start, opts);
    PhotonStats stats = photon_stats(r.solution);
    return {r.dims, std::move(r.solution), stats};
}

Truncation start_dims(const ScanConfig& config) {
    return Truncation{config.params.n_cavity, config.params.n_mech};
}

// Runs task(i) for i in [0, n) on up to `workers` threads. Returns one
// exception_ptr per index (null on success).
template <typename Task>
std::vector<std::exception_ptr> run_pool(std::size_t n, int workers, Task&& task) {
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            try {
                task(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const auto count = static_cast<std::size_t>(std::max(1, workers));
    if (count == 1 || n <= 1) {
        worker();
        return errors;
    }
    std::vector<std::jthread> threads;
    threads.reserve(std::min(count, n));
    for (std::size_t t = 0; t < std::min(count, n); ++t) threads.emplace_back(worker);
    threads.clear();
    return errors;
}

std::string describe(const std::exception_ptr& e) {
    try {
        std::rethrow_exception(e);
    } catch (const Error& err) {
        return std::string(to_string(err.kind())) + ": " + err.what();
    } catch (const std::exception& err) {
        return err.what();
    }
}

ScanRow make_row(double axis_value, const PointSolution& point) {
    ScanRow row;
    row.axis = axis_value;
    row.n_a = point.stats.n_a;
    row.g2 = point.stats.g2;
    row.residual = point.solution.state.residual;
    row.n_cavity = point.dims.n_cavity;
    row.n_mech = point.solution.layout.mech_dim;
    row.trace_error = point.solution.state.trace_error;
    row.hermiticity_error = point.solution.state.hermiticity_error;
    row.min_eigenvalue = point.solution.state.min_eigenvalue;
    return row;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::string library_version() { return MOLLOW_VERSION; }

ModelParams point_params(const ScanConfig& config, double axis_value, double window_delta) {
    ModelParams p = config.params;
    switch (config.axis) {
        case Axis::Delta: p.delta = axis_value; break;
        case Axis::G: p.g = axis_value; p.delta = window_delta; break;
        case Axis::GM: p.g_m = axis_value; p.delta = window_delta; break;
        case Axis::NTh: p.n_th = axis_value; p.delta = window_delta; break;
    }
    return p;
}

ModelParams baseline_params(ModelKind kind, const ModelParams& params) {
    ModelParams p = params;
    if (is_jc(kind)) p.g = 0.0;
    if (is_oms(kind)) p.g_m = 0.0;
    return p;
}

Calibration calibrate(const ScanConfig& config) {
    ScanConfig cal = config;
    cal.axis = Axis::Delta;
    cal.grid = config.calibration;
    cal.window = {};
    cal.deviations = false;
    cal.params = baseline_params(config.model, config.params);
    // With g_m = 0 the mechanical mode never leaves its initial state.
    if (is_oms(config.model)) cal.params.n_mech = 2;
    ScanResult spectrum = run_scan(cal);
    MollowWindows windows = find_mollow_windows(spectrum);
    spectrum.metadata.windows = windows;
    return Calibration{std::move(spectrum), windows};
}

MollowWindows find_mollow_windows(const ScanResult& scan) {
    if (scan.axis != Axis::Delta) {
        throw Error(ErrorKind::Configuration, "window calibration needs a delta scan");
    }
    std::vector<double> delta;
    std::vector<double> n_a;
    delta.reserve(scan.rows.size());
    n_a.reserve(scan.rows.size());
    for (const auto& row : scan.rows) {
        delta.push_back(row.axis);
        n_a.push_back(row.n_a);
    }
    return find_mollow_windows(std::span<const double>(delta), std::span<const double>(n_a));
}

ScanResult run_scan(const ScanConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    config.validate();
    if (config.deviations && config.model == ModelKind::SourceOnly) {
        throw Error(ErrorKind::Configuration, "deviations need a target with internal coupling");
    }

    ScanResult result;
    result.axis = config.axis;
    result.metadata.config_echo = serialize_config(config);
    result.metadata.version = library_version();

    const std::vector<double> axis_values = config.grid.points();
    const std::size_t n = axis_values.size();
    std::vector<ModelParams> params(n);
    for (std::size_t i = 0; i < n; ++i) check_model_params(config.model, point_params(config, axis_values[i], 0.0));

    double window_delta = config.params.delta;
    if (config.axis != Axis::Delta) {
        if (config.window.named) {
            const Calibration cal = calibrate(config);
            result.metadata.windows = cal.windows;
            window_delta = window_detuning(cal.windows, *config.window.named);
        } else if (config.window.delta) {
            window_delta = *config.window.delta;
        }
        result.metadata.window_delta = window_delta;
    }

    for (std::size_t i = 0; i < n; ++i) params[i] = point_params(config, axis_values[i], window_delta);

    // Baselines first. Sweeps over a coupling share a single baseline point.
    const bool shared_baseline = config.axis == Axis::G || config.axis == Axis::GM;
    std::vector<std::optional<PointSolution>> baselines;
    std::vector<std::exception_ptr> errors;
    if (config.deviations) {
        const std::size_t nb = shared_baseline ? 1 : n;
        baselines.resize(nb);
        errors = run_pool(nb, config.workers, [&](std::size_t i) {
            baselines[i] = solve_point(config.model, baseline_params(config.model, params[i]),
                                       start_dims(config), config);
        });
        for (std::size_t i = 0; i < nb; ++i) {
            if (errors[i]) {
                result.metadata.failed = true;
                result.metadata.failure = "baseline solve failed: " + describe(errors[i]);
                result.metadata.failed_axis_value = shared_baseline ? 0.0 : axis_values[i];
                result.metadata.wall_time_seconds = seconds_since(t0);
                const std::string message = result.metadata.failure;
                throw ScanFailure(message, std::move(result));
            }
        }
    }

    std::vector<std::optional<ScanRow>> rows(n);
    errors = run_pool(n, config.workers, [&](std::size_t i) {
        const PointSolution* base = nullptr;
        if (config.deviations) base = &*baselines[shared_baseline ? 0 : i];
        const Truncation start = base ? base->dims : start_dims(config);
        PointSolution point = solve_point(config.model, params[i], start, config);
        ScanRow row = make_row(axis_values[i], point);
        if (base) {
            // Compare at equal truncation so truncation error cancels.
            std::optional<PointSolution> rebased;
            if (!(point.dims == base->dims)) {
                ScanConfig fixed = config;
                fixed.truncation.mode = TruncationMode::Fixed;
                rebased = solve_point(config.model, baseline_params(config.model, params[i]), point.dims, fixed);
                base = &*rebased;
            }
            const Deviation d = deviation(point.stats, base->stats);
            row.d_na = d.d_na;
            row.d_g2 = d.d_g2;
            row.baseline_n_a = base->stats.n_a;
            row.baseline_g2 = base->stats.g2;
        }
        rows[i] = std::move(row);
    });

    std::optional<std::size_t> first_failure;
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i]) {
            result.rows.push_back(std::move(*rows[i]));
        } else if (!first_failure) {
            first_failure = i;
        }
    }
    result.metadata.wall_time_seconds = seconds_since(t0);
    if (first_failure) {
        const std::size_t i = *first_failure;
        result.metadata.failed = true;
        result.metadata.failed_axis_value = axis_values[i];
        result.metadata.failure = "grid point " + std::string(to_string(config.axis)) + "=" +
                                  format_double(axis_values[i]) + " failed: " + describe(errors[i]);
        const std::string message = result.metadata.failure;
        throw ScanFailure(message, std::move(result));
    }
    return result;
}

}  // namespace mollow
