// mollow: command-line front end for steady-state scans.
//
//   mollow scan      --config run.cfg --out results --format csv
//   mollow calibrate --config run.cfg
//   mollow oracle    --set delta=3
//   mollow check

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mollow/config.hpp"
#include "mollow/emit.hpp"
#include "mollow/error.hpp"
#include "mollow/format.hpp"
#include "mollow/invariants.hpp"
#include "mollow/oracle.hpp"
#include "mollow/scan.hpp"

namespace {

using namespace mollow;

struct CommonOptions {
    std::string config_path;
    std::vector<std::string> overrides;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<int> workers;
    bool seedless = false;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("-c,--config", o.config_path, "key = value configuration file")->check(CLI::ExistingFile);
    cmd->add_option("-s,--set", o.overrides, "override a configuration key (key=value), repeatable");
    cmd->add_option("-o,--out", o.out, "output directory");
    cmd->add_option("-f,--format", o.format, "output format")->check(CLI::IsMember({"csv", "json", "svg"}));
    cmd->add_option("-w,--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_flag("--seedless", o.seedless, "no-op: solves are deterministic and draw no random numbers");
}

ScanConfig build_config(const CommonOptions& o) {
    ScanConfig config = o.config_path.empty() ? parse_config("") : load_config(o.config_path);
    for (const auto& assignment : o.overrides) apply_override(config, assignment);
    if (o.out) config.output_dir = *o.out;
    if (o.format) config.format = *o.format;
    if (o.workers) config.workers = *o.workers;
    config.validate();
    return config;
}

std::string quote(std::string_view text) {
    std::string out;
    for (char c : text) {
        if (c == '"' || c == '\\') out += '\\';
        out += c == '\n' ? ' ' : c;
    }
    return out;
}

void report_error(ErrorKind kind, std::string_view message) {
    std::cerr << "error kind=" << to_string(kind) << " message=\"" << quote(message) << "\"\n";
}

void warn_unphysical(const ScanResult& result) {
    for (const auto& row : result.rows) {
        if (row.min_eigenvalue < -1e-8) {
            std::cerr << "warning: axis=" << format_double(row.axis)
                      << " steady state has negative eigenvalue " << format_double(row.min_eigenvalue) << "\n";
        }
    }
}

void print_windows(const MollowWindows& w) {
    std::cout << "center=" << format_double(w.center) << "\n"
              << "side_left=" << format_double(w.side_left) << "\n"
              << "side_right=" << format_double(w.side_right) << "\n"
              << "half_left=" << format_double(w.half_left) << "\n"
              << "half_right=" << format_double(w.half_right) << "\n";
}

int cmd_scan(const CommonOptions& o) {
    const ScanConfig config = build_config(o);
    try {
        const ScanResult result = run_scan(config);
        warn_unphysical(result);
        std::cout << emit(result, config.format, config.output_dir, config.output_name).string() << "\n";
        return 0;
    } catch (const ScanFailure& failure) {
        warn_unphysical(failure.partial());
        try {
            std::cerr << "partial output: "
                      << emit(failure.partial(), config.format, config.output_dir, config.output_name).string()
                      << "\n";
        } catch (const Error& e) {
            report_error(e.kind(), e.what());
        }
        throw;
    }
}

int cmd_calibrate(const CommonOptions& o) {
    const ScanConfig config = build_config(o);
    const Calibration cal = calibrate(config);
    print_windows(cal.windows);
    if (o.out) {
        std::cout << "spectrum=" << emit(cal.spectrum, config.format, config.output_dir,
                                         config.output_name + "_calibration").string()
                  << "\n";
    }
    return 0;
}

int cmd_oracle(const CommonOptions& o, bool compare_numeric, double tolerance) {
    const ScanConfig config = build_config(o);
    const oracle::OracleInput in = oracle::OracleInput::from(config.params);
    in.validate();
    std::cout << "delta=" << format_double(in.delta) << "\n"
              << "n_a=" << format_double(oracle::na_closed_form(in)) << "\n"
              << "n_a_resonant=" << format_double(oracle::na_resonant(in)) << "\n"
              << "g2_resonant=" << format_double(oracle::g2_resonant(in)) << "\n";
    if (!compare_numeric) return 0;

    // Numerical g = 0 steady state for the same drive, compared at both the
    // configured detuning (n_a) and resonance (g2).
    ModelParams p = baseline_params(config.model, config.params);
    const ModelKind kind = has_source(config.model) ? config.model : ModelKind::CascadedJC;
    const PhotonStats at_delta = photon_stats(solve_model(kind, p, config.solver));
    p.delta = 0.0;
    p.delta_a.reset();
    const PhotonStats at_zero = photon_stats(solve_model(kind, p, config.solver));

    const auto na = oracle::compare(oracle::na_closed_form(in), at_delta.n_a, tolerance);
    std::cout << "n_a_numeric=" << format_double(na.numeric) << "\n"
              << "n_a_relative_error=" << format_double(na.relative_error) << "\n"
              << "n_a_agrees=" << (na.within_tolerance ? "true" : "false") << "\n";
    if (at_zero.g2) {
        const auto g2 = oracle::compare(oracle::g2_resonant(in), *at_zero.g2, tolerance);
        std::cout << "g2_numeric=" << format_double(g2.numeric) << "\n"
                  << "g2_relative_error=" << format_double(g2.relative_error) << "\n"
                  << "g2_agrees=" << (g2.within_tolerance ? "true" : "false") << "\n";
    }
    return 0;
}

int cmd_check() {
    int failed = 0;
    for (const auto& r : run_invariant_suite()) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.detail << ")\n";
        failed += r.passed ? 0 : 1;
    }
    std::cout << (failed == 0 ? "all invariants hold\n" : std::to_string(failed) + " invariant(s) violated\n");
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steady-state photon statistics of cascaded driven cavities"};
    app.set_version_flag("--version", library_version());
    app.require_subcommand(1);

    CommonOptions scan_opts, cal_opts, oracle_opts;
    auto* scan = app.add_subcommand("scan", "sweep delta, g, g_m or n_th and write results");
    add_common(scan, scan_opts);
    auto* cal = app.add_subcommand("calibrate", "locate the Mollow windows of the uncoupled spectrum");
    add_common(cal, cal_opts);
    auto* orc = app.add_subcommand("oracle", "evaluate the closed-form photon statistics");
    add_common(orc, oracle_opts);
    bool compare_numeric = false;
    double tolerance = 1e-4;
    orc->add_flag("--compare", compare_numeric, "also solve numerically and report the discrepancy");
    orc->add_option("--tolerance", tolerance, "relative tolerance for --compare");
    auto* chk = app.add_subcommand("check", "run structural and physical invariant checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*scan) return cmd_scan(scan_opts);
        if (*cal) return cmd_calibrate(cal_opts);
        if (*orc) return cmd_oracle(oracle_opts, compare_numeric, tolerance);
        if (*chk) return cmd_check();
    } catch (const Error& e) {
        report_error(e.kind(), e.what());
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error kind=internal message=\"" << quote(e.what()) << "\"\n";
        return 1;
    }
    return 0;
}
