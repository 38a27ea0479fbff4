#include "mollow/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "mollow/error.hpp"
#include "mollow/format.hpp"

namespace mollow {

namespace {

bool parse_bool(std::string_view v, std::string_view key) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw Error(ErrorKind::Configuration, "expected true/false for " + std::string(key));
}

Spacing parse_spacing(std::string_view v) {
    if (v == "linear") return Spacing::Linear;
    if (v == "log") return Spacing::Log;
    throw Error(ErrorKind::Configuration, "grid spacing must be linear or log, got '" + std::string(v) + "'");
}

Observable parse_observable(std::string_view v) {
    if (v == "n_a") return Observable::PhotonNumber;
    if (v == "g2") return Observable::G2;
    throw Error(ErrorKind::Configuration, "ladder observable must be n_a or g2");
}

using Setter = std::function<void(ScanConfig&, std::string_view)>;

// Keys that were set explicitly; used for model-dependent defaults.
struct ParseState {
    bool n_cavity_set = false;
    bool grid_set = false;
};

const std::map<std::string, Setter, std::less<>>& setters() {
    static const std::map<std::string, Setter, std::less<>> table = [] {
        std::map<std::string, Setter, std::less<>> t;
        auto num = [](double ModelParams::*field) {
            return [field](ScanConfig& c, std::string_view v) { c.params.*field = parse_double(v, "parameter"); };
        };
        t["model"] = [](ScanConfig& c, std::string_view v) { c.model = parse_model_kind(v); };
        t["kappa"] = num(&ModelParams::kappa);
        t["gamma_s"] = num(&ModelParams::gamma_s);
        t["gamma"] = num(&ModelParams::gamma);
        t["gamma_m"] = num(&ModelParams::gamma_m);
        t["omega_drive"] = num(&ModelParams::omega_drive);
        t["mu1"] = num(&ModelParams::mu1);
        t["mu2"] = num(&ModelParams::mu2);
        t["delta"] = num(&ModelParams::delta);
        t["delta_s"] = num(&ModelParams::delta_s);
        t["delta_a"] = [](ScanConfig& c, std::string_view v) {
            if (v == "follow") {
                c.params.delta_a.reset();
            } else {
                c.params.delta_a = parse_double(v, "delta_a");
            }
        };
        t["g"] = num(&ModelParams::g);
        t["g_m"] = num(&ModelParams::g_m);
        t["omega_m"] = num(&ModelParams::omega_m);
        t["n_th"] = num(&ModelParams::n_th);
        t["n_cavity"] = [](ScanConfig& c, std::string_view v) { c.params.n_cavity = parse_int(v, "n_cavity"); };
        t["n_mech"] = [](ScanConfig& c, std::string_view v) { c.params.n_mech = parse_int(v, "n_mech"); };
        t["axis"] = [](ScanConfig& c, std::string_view v) { c.axis = parse_axis(v); };
        t["axis_min"] = [](ScanConfig& c, std::string_view v) { c.grid.min = parse_double(v, "axis_min"); };
        t["axis_max"] = [](ScanConfig& c, std::string_view v) { c.grid.max = parse_double(v, "axis_max"); };
        t["axis_count"] = [](ScanConfig& c, std::string_view v) { c.grid.count = parse_int(v, "axis_count"); };
        t["axis_spacing"] = [](ScanConfig& c, std::string_view v) { c.grid.spacing = parse_spacing(v); };
        t["window"] = [](ScanConfig& c, std::string_view v) {
            c.window = {};
            if (v == "none") return;
            if (!v.empty() && (std::isdigit(static_cast<unsigned char>(v.front())) || v.front() == '-' ||
                               v.front() == '+' || v.front() == '.')) {
                c.window.delta = parse_double(v, "window");
            } else {
                c.window.named = parse_named_window(v);
            }
        };
        t["calibration_min"] = [](ScanConfig& c, std::string_view v) {
            c.calibration.min = parse_double(v, "calibration_min");
        };
        t["calibration_max"] = [](ScanConfig& c, std::string_view v) {
            c.calibration.max = parse_double(v, "calibration_max");
        };
        t["calibration_count"] = [](ScanConfig& c, std::string_view v) {
            c.calibration.count = parse_int(v, "calibration_count");
        };
        t["deviations"] = [](ScanConfig& c, std::string_view v) { c.deviations = parse_bool(v, "deviations"); };
        t["truncation"] = [](ScanConfig& c, std::string_view v) {
            if (v == "fixed") {
                c.truncation.mode = TruncationMode::Fixed;
            } else if (v == "ladder") {
                c.truncation.mode = TruncationMode::Ladder;
            } else {
                throw Error(ErrorKind::Configuration, "truncation must be fixed or ladder");
            }
        };
        t["ladder_tolerance"] = [](ScanConfig& c, std::string_view v) {
            c.truncation.tolerance = parse_double(v, "ladder_tolerance");
        };
        t["ladder_observable"] = [](ScanConfig& c, std::string_view v) {
            c.truncation.observable = parse_observable(v);
        };
        t["max_n_cavity"] = [](ScanConfig& c, std::string_view v) {
            c.truncation.max_n_cavity = parse_int(v, "max_n_cavity");
        };
        t["max_n_mech"] = [](ScanConfig& c, std::string_view v) {
            c.truncation.max_n_mech = parse_int(v, "max_n_mech");
        };
        t["solver_tolerance"] = [](ScanConfig& c, std::string_view v) {
            c.solver.tolerance = parse_double(v, "solver_tolerance");
        };
        t["memory_cap_mb"] = [](ScanConfig& c, std::string_view v) {
            const double mb = parse_double(v, "memory_cap_mb");
            if (!(mb > 0.0)) throw Error(ErrorKind::Configuration, "memory_cap_mb must be > 0");
            c.solver.memory_cap_bytes = static_cast<std::size_t>(mb * 1024.0 * 1024.0);
        };
        t["workers"] = [](ScanConfig& c, std::string_view v) { c.workers = parse_int(v, "workers"); };
        t["output_dir"] = [](ScanConfig& c, std::string_view v) { c.output_dir = std::string(v); };
        t["output_name"] = [](ScanConfig& c, std::string_view v) { c.output_name = std::string(v); };
        t["format"] = [](ScanConfig& c, std::string_view v) { c.format = std::string(v); };
        return t;
    }();
    return table;
}

std::pair<std::string_view, std::string_view> split_assignment(std::string_view line, int line_no) {
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
        throw Error(ErrorKind::Configuration,
                    "line " + std::to_string(line_no) + ": expected 'key = value', got '" + std::string(line) + "'");
    }
    return {trim(line.substr(0, eq)), trim(line.substr(eq + 1))};
}

void apply(ScanConfig& config, std::string_view key, std::string_view value, ParseState& state) {
    const auto& table = setters();
    const auto it = table.find(key);
    if (it == table.end()) {
        throw Error(ErrorKind::Configuration, "unknown config key '" + std::string(key) + "'");
    }
    it->second(config, value);
    if (key == "n_cavity") state.n_cavity_set = true;
    if (key.starts_with("axis_")) state.grid_set = true;
}

}  // namespace

std::string_view to_string(Axis axis) {
    switch (axis) {
        case Axis::Delta: return "delta";
        case Axis::G: return "g";
        case Axis::GM: return "g_m";
        case Axis::NTh: return "n_th";
    }
    return "unknown";
}

Axis parse_axis(std::string_view name) {
    if (name == "delta") return Axis::Delta;
    if (name == "g") return Axis::G;
    if (name == "g_m") return Axis::GM;
    if (name == "n_th") return Axis::NTh;
    throw Error(ErrorKind::Configuration, "axis must be one of delta, g, g_m, n_th");
}

void Grid::validate(std::string_view what) const {
    if (count < 2) throw Error(ErrorKind::Configuration, std::string(what) + ": grid count must be >= 2");
    if (!(min < max)) throw Error(ErrorKind::Configuration, std::string(what) + ": grid needs min < max");
    if (spacing == Spacing::Log && !(min > 0.0)) {
        throw Error(ErrorKind::Configuration, std::string(what) + ": log grid needs min > 0");
    }
}

std::vector<double> Grid::points() const {
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(count - 1);
        if (spacing == Spacing::Linear) {
            out[static_cast<std::size_t>(i)] = (i == count - 1) ? max : min + t * (max - min);
        } else {
            const double lmin = std::log10(min);
            const double lmax = std::log10(max);
            out[static_cast<std::size_t>(i)] = (i == count - 1) ? max : std::pow(10.0, lmin + t * (lmax - lmin));
        }
    }
    if (spacing == Spacing::Log) out.front() = min;
    return out;
}

void ScanConfig::validate() const {
    params.validate();
    grid.validate("axis");
    calibration.validate("calibration");
    if (workers < 1) throw Error(ErrorKind::Configuration, "workers must be >= 1");
    if (!(solver.tolerance > 0.0)) throw Error(ErrorKind::Configuration, "solver_tolerance must be > 0");
    if (!(truncation.tolerance > 0.0)) throw Error(ErrorKind::Configuration, "ladder_tolerance must be > 0");
    if (axis == Axis::Delta && !window.empty()) {
        throw Error(ErrorKind::Configuration, "window selection only applies to g, g_m or n_th sweeps");
    }
    if (axis == Axis::G && !is_jc(model)) throw Error(ErrorKind::Configuration, "axis g needs a JC model");
    if (axis == Axis::GM && !is_oms(model)) throw Error(ErrorKind::Configuration, "axis g_m needs an OMS model");
    if (axis == Axis::NTh && model != ModelKind::CascadedJCThermal) {
        throw Error(ErrorKind::Configuration, "axis n_th needs cascaded_jc_thermal");
    }
    if (!has_cavity(model)) throw Error(ErrorKind::Configuration, "scans observe the target cavity");
    if (format != "csv" && format != "json" && format != "svg") {
        throw Error(ErrorKind::Configuration, "format must be csv, json or svg");
    }
}

Truncation default_truncation(ModelKind kind) {
    const bool classical = kind == ModelKind::ClassicalJC || kind == ModelKind::ClassicalOMS;
    return Truncation{classical ? 4 : 8, 12};
}

Grid default_grid(Axis axis) {
    switch (axis) {
        case Axis::Delta: return Grid{-20.0, 20.0, 401, Spacing::Linear};
        case Axis::G:
        case Axis::GM: return Grid{1e-3, 1e-1, 21, Spacing::Log};
        case Axis::NTh: return Grid{0.0, 0.2, 5, Spacing::Linear};
    }
    return Grid{};
}

ScanConfig parse_config(std::string_view text) {
    ScanConfig config;
    ParseState state;
    std::set<std::string, std::less<>> seen;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto [key, value] = split_assignment(line, line_no);
        if (!seen.insert(std::string(key)).second) {
            throw Error(ErrorKind::Configuration, "duplicate config key '" + std::string(key) + "'");
        }
        // axis determines the default grid; apply it before grid keys.
        if (key == "axis") {
            apply(config, key, value, state);
            if (!state.grid_set) config.grid = default_grid(config.axis);
            continue;
        }
        apply(config, key, value, state);
    }
    if (!state.n_cavity_set) config.params.n_cavity = default_truncation(config.model).n_cavity;
    return config;
}

ScanConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open config '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void apply_override(ScanConfig& config, std::string_view assignment) {
    const auto [key, value] = split_assignment(trim(assignment), 0);
    ParseState state{true, true};
    const Axis before = config.axis;
    apply(config, key, value, state);
    if (key == "axis" && config.axis != before) config.grid = default_grid(config.axis);
}

std::string serialize_config(const ScanConfig& c) {
    std::ostringstream out;
    const ModelParams& p = c.params;
    auto kv = [&](std::string_view key, const std::string& value) { out << key << " = " << value << '\n'; };
    kv("model", std::string(to_string(c.model)));
    kv("kappa", format_double(p.kappa));
    kv("gamma_s", format_double(p.gamma_s));
    kv("gamma", format_double(p.gamma));
    kv("gamma_m", format_double(p.gamma_m));
    kv("omega_drive", format_double(p.omega_drive));
    kv("mu1", format_double(p.mu1));
    kv("mu2", format_double(p.mu2));
    kv("delta", format_double(p.delta));
    kv("delta_s", format_double(p.delta_s));
    kv("delta_a", p.delta_a ? format_double(*p.delta_a) : std::string("follow"));
    kv("g", format_double(p.g));
    kv("g_m", format_double(p.g_m));
    kv("omega_m", format_double(p.omega_m));
    kv("n_th", format_double(p.n_th));
    kv("n_cavity", std::to_string(p.n_cavity));
    kv("n_mech", std::to_string(p.n_mech));
    kv("axis", std::string(to_string(c.axis)));
    kv("axis_min", format_double(c.grid.min));
    kv("axis_max", format_double(c.grid.max));
    kv("axis_count", std::to_string(c.grid.count));
    kv("axis_spacing", c.grid.spacing == Spacing::Linear ? "linear" : "log");
    if (c.window.named) {
        kv("window", std::string(to_string(*c.window.named)));
    } else if (c.window.delta) {
        kv("window", format_double(*c.window.delta));
    } else {
        kv("window", "none");
    }
    kv("calibration_min", format_double(c.calibration.min));
    kv("calibration_max", format_double(c.calibration.max));
    kv("calibration_count", std::to_string(c.calibration.count));
    kv("deviations", c.deviations ? "true" : "false");
    kv("truncation", c.truncation.mode == TruncationMode::Fixed ? "fixed" : "ladder");
    kv("ladder_tolerance", format_double(c.truncation.tolerance));
    kv("ladder_observable", c.truncation.observable == Observable::G2 ? "g2" : "n_a");
    kv("max_n_cavity", std::to_string(c.truncation.max_n_cavity));
    kv("max_n_mech", std::to_string(c.truncation.max_n_mech));
    kv("solver_tolerance", format_double(c.solver.tolerance));
    kv("memory_cap_mb", format_double(static_cast<double>(c.solver.memory_cap_bytes) / (1024.0 * 1024.0)));
    kv("workers", std::to_string(c.workers));
    kv("output_dir", c.output_dir);
    kv("output_name", c.output_name);
    kv("format", c.format);
    return out.str();
}

}  // namespace mollow
