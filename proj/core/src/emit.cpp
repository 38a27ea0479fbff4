#include "mollow/emit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "mollow/error.hpp"
#include "mollow/format.hpp"

namespace mollow {

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::optional<double> parse_opt(std::string_view field) {
    field = trim(field);
    if (field.empty()) return std::nullopt;
    return parse_double(field, "csv field");
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

nlohmann::json json_opt(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::string escape_xml(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// Short tick label.
std::string tick(double v) {
    std::ostringstream s;
    s.precision(3);
    s << v;
    return s.str();
}

constexpr std::array<const char*, 6> kColors{"#1f3b73", "#c0392b", "#27ae60", "#8e44ad", "#d35400", "#7f8c8d"};

}  // namespace

std::string to_csv(const ScanResult& result) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const auto& r : result.rows) {
        out << format_double(r.axis) << ',' << format_double(r.n_a) << ',' << opt(r.g2) << ',' << opt(r.d_na)
            << ',' << opt(r.d_g2) << ',' << format_double(r.residual) << ',' << r.n_cavity << ',' << r.n_mech
            << '\n';
    }
    if (result.metadata.failed) {
        out << "# FAILED";
        if (result.metadata.failed_axis_value) out << " at axis=" << format_double(*result.metadata.failed_axis_value);
        out << ": " << result.metadata.failure << '\n';
    }
    return out.str();
}

std::vector<ScanRow> parse_csv(std::string_view text) {
    std::vector<ScanRow> rows;
    bool header_seen = false;
    for (std::string_view line : split(text, '\n')) {
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            if (line != kCsvHeader) throw Error(ErrorKind::Io, "unexpected CSV header '" + std::string(line) + "'");
            header_seen = true;
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() != 8) throw Error(ErrorKind::Io, "CSV row has " + std::to_string(f.size()) + " fields");
        ScanRow r;
        r.axis = parse_double(f[0], "axis");
        r.n_a = parse_double(f[1], "n_a");
        r.g2 = parse_opt(f[2]);
        r.d_na = parse_opt(f[3]);
        r.d_g2 = parse_opt(f[4]);
        r.residual = parse_double(f[5], "residual");
        r.n_cavity = parse_int(f[6], "n_cavity");
        r.n_mech = parse_int(f[7], "n_mech");
        rows.push_back(r);
    }
    if (!header_seen) throw Error(ErrorKind::Io, "CSV has no header");
    return rows;
}

std::string to_json(const ScanResult& result) {
    nlohmann::json j;
    const ScanMetadata& m = result.metadata;
    j["axis"] = std::string(to_string(result.axis));
    j["status"] = m.failed ? "failed" : "ok";
    nlohmann::json meta;
    meta["config"] = m.config_echo;
    meta["version"] = m.version;
    meta["wall_time_seconds"] = m.wall_time_seconds;
    if (m.failed) {
        meta["failure"] = m.failure;
        meta["failed_axis_value"] = json_opt(m.failed_axis_value);
    }
    if (m.windows) {
        meta["windows"] = {{"center", m.windows->center},
                           {"half_left", m.windows->half_left},
                           {"half_right", m.windows->half_right},
                           {"side_left", m.windows->side_left},
                           {"side_right", m.windows->side_right}};
    }
    meta["window_delta"] = json_opt(m.window_delta);
    j["metadata"] = meta;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : result.rows) {
        rows.push_back({{"axis", r.axis},
                        {"n_a", r.n_a},
                        {"g2", json_opt(r.g2)},
                        {"d_na", json_opt(r.d_na)},
                        {"d_g2", json_opt(r.d_g2)},
                        {"residual", r.residual},
                        {"n_cavity", r.n_cavity},
                        {"n_mech", r.n_mech},
                        {"baseline_n_a", json_opt(r.baseline_n_a)},
                        {"baseline_g2", json_opt(r.baseline_g2)},
                        {"trace_error", r.trace_error},
                        {"hermiticity_error", r.hermiticity_error},
                        {"min_eigenvalue", r.min_eigenvalue}});
    }
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

std::string render_svg(const std::vector<PlotPanel>& panels) {
    constexpr double width = 720.0;
    constexpr double panel_h = 300.0;
    constexpr double ml = 90.0, mr = 160.0, mt = 40.0, mb = 55.0;
    const double height = panel_h * static_cast<double>(std::max<std::size_t>(1, panels.size()));
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (std::size_t p = 0; p < panels.size(); ++p) {
        const PlotPanel& panel = panels[p];
        const double top = panel_h * static_cast<double>(p);
        auto tx = [&](double v) { return panel.log_x ? std::log10(v) : v; };
        auto ty = [&](double v) { return panel.log_y ? std::log10(v) : v; };
        auto usable_x = [&](double v) { return std::isfinite(v) && (!panel.log_x || v > 0.0); };
        auto usable_y = [&](double v) { return std::isfinite(v) && (!panel.log_y || v > 0.0); };

        double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
        for (const auto& s : panel.series) {
            for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
                if (!usable_x(s.x[i]) || !usable_y(s.y[i])) continue;
                x0 = std::min(x0, tx(s.x[i]));
                x1 = std::max(x1, tx(s.x[i]));
                y0 = std::min(y0, ty(s.y[i]));
                y1 = std::max(y1, ty(s.y[i]));
            }
        }
        if (!std::isfinite(x0)) { x0 = 0.0; x1 = 1.0; y0 = 0.0; y1 = 1.0; }
        if (x1 == x0) { x0 -= 0.5; x1 += 0.5; }
        if (y1 == y0) { y0 -= 0.5; y1 += 0.5; }
        const double pad = 0.05 * (y1 - y0);
        y0 -= pad;
        y1 += pad;

        const double left = ml, right = width - mr, ptop = top + mt, pbottom = top + panel_h - mb;
        auto px = [&](double v) { return left + (tx(v) - x0) / (x1 - x0) * (right - left); };
        auto py = [&](double v) { return pbottom - (ty(v) - y0) / (y1 - y0) * (pbottom - ptop); };

        svg << "<g>\n";
        svg << "<text x=\"" << (left + right) / 2 << "\" y=\"" << top + 22 << "\" text-anchor=\"middle\" font-size=\"14\">"
            << escape_xml(panel.title) << "</text>\n";
        svg << "<rect x=\"" << left << "\" y=\"" << ptop << "\" width=\"" << right - left << "\" height=\""
            << pbottom - ptop << "\" fill=\"none\" stroke=\"black\"/>\n";
        for (int t = 0; t <= 4; ++t) {
            const double fx = x0 + (x1 - x0) * t / 4.0;
            const double fy = y0 + (y1 - y0) * t / 4.0;
            const double sx = left + (right - left) * t / 4.0;
            const double sy = pbottom - (pbottom - ptop) * t / 4.0;
            svg << "<line x1=\"" << sx << "\" y1=\"" << pbottom << "\" x2=\"" << sx << "\" y2=\"" << pbottom + 5
                << "\" stroke=\"black\"/>";
            svg << "<text x=\"" << sx << "\" y=\"" << pbottom + 18 << "\" text-anchor=\"middle\">"
                << tick(panel.log_x ? std::pow(10.0, fx) : fx) << "</text>\n";
            svg << "<line x1=\"" << left - 5 << "\" y1=\"" << sy << "\" x2=\"" << left << "\" y2=\"" << sy
                << "\" stroke=\"black\"/>";
            svg << "<text x=\"" << left - 8 << "\" y=\"" << sy + 4 << "\" text-anchor=\"end\">"
                << tick(panel.log_y ? std::pow(10.0, fy) : fy) << "</text>\n";
        }
        svg << "<text x=\"" << (left + right) / 2 << "\" y=\"" << pbottom + 40 << "\" text-anchor=\"middle\">"
            << escape_xml(panel.x_label) << "</text>\n";
        svg << "<text transform=\"translate(" << 22 << ',' << (ptop + pbottom) / 2
            << ") rotate(-90)\" text-anchor=\"middle\">" << escape_xml(panel.y_label) << "</text>\n";

        for (std::size_t s = 0; s < panel.series.size(); ++s) {
            const PlotSeries& series = panel.series[s];
            const char* color = kColors[s % kColors.size()];
            svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\""
                << (s % 2 == 1 ? " stroke-dasharray=\"6,4\"" : "") << " points=\"";
            for (std::size_t i = 0; i < std::min(series.x.size(), series.y.size()); ++i) {
                if (!usable_x(series.x[i]) || !usable_y(series.y[i])) continue;
                svg << px(series.x[i]) << ',' << py(series.y[i]) << ' ';
            }
            svg << "\"/>\n";
            const double ly = ptop + 16.0 * static_cast<double>(s + 1);
            svg << "<line x1=\"" << right + 12 << "\" y1=\"" << ly - 4 << "\" x2=\"" << right + 36 << "\" y2=\""
                << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>";
            svg << "<text x=\"" << right + 42 << "\" y=\"" << ly << "\">" << escape_xml(series.label) << "</text>\n";
        }
        svg << "</g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string axis_label(Axis axis) {
    switch (axis) {
        case Axis::Delta: return "detuning \xce\x94 / \xce\xba";
        case Axis::G: return "coupling g / \xce\xba";
        case Axis::GM: return "coupling g_m / \xce\xba";
        case Axis::NTh: return "thermal occupancy n_th";
    }
    return "axis";
}

std::vector<PlotPanel> scan_panels(const ScanResult& result) {
    const bool log_x = result.axis == Axis::G || result.axis == Axis::GM;
    const bool has_baseline = std::any_of(result.rows.begin(), result.rows.end(),
                                          [](const ScanRow& r) { return r.baseline_n_a.has_value(); });
    const std::string x_label = axis_label(result.axis);
    const double nan = std::numeric_limits<double>::quiet_NaN();

    PlotSeries na{has_baseline ? "coupled" : "n_a", {}, {}};
    PlotSeries na0{"uncoupled", {}, {}};
    PlotSeries g2{has_baseline ? "coupled" : "g2", {}, {}};
    PlotSeries g20{"uncoupled", {}, {}};
    PlotSeries dg2{"|\xce\x94g2|", {}, {}};
    PlotSeries dna{"|\xce\x94n_a|", {}, {}};
    for (const auto& r : result.rows) {
        na.x.push_back(r.axis); na.y.push_back(r.n_a);
        g2.x.push_back(r.axis); g2.y.push_back(r.g2.value_or(nan));
        if (has_baseline) {
            na0.x.push_back(r.axis); na0.y.push_back(r.baseline_n_a.value_or(nan));
            g20.x.push_back(r.axis); g20.y.push_back(r.baseline_g2.value_or(nan));
        }
        if (r.d_g2) { dg2.x.push_back(r.axis); dg2.y.push_back(*r.d_g2); }
        if (r.d_na) { dna.x.push_back(r.axis); dna.y.push_back(*r.d_na); }
    }

    auto wide_range = [](const PlotSeries& s) {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (double v : s.y) {
            if (std::isfinite(v) && v > 0.0) { lo = std::min(lo, v); hi = std::max(hi, v); }
        }
        return std::isfinite(lo) && hi / lo > 100.0;
    };

    std::vector<PlotPanel> panels;
    PlotPanel p1{"mean photon number", x_label, "n_a", log_x, wide_range(na), {na}};
    if (has_baseline) p1.series = {na0, na};
    panels.push_back(p1);
    PlotPanel p2{"equal-time second-order correlation", x_label, "g2", log_x, wide_range(g2), {g2}};
    if (has_baseline) p2.series = {g20, g2};
    panels.push_back(p2);
    if (!dg2.x.empty()) {
        panels.push_back(PlotPanel{"deviation norms", x_label, "|\xce\x94|", log_x, true, {dg2, dna}});
    }
    return panels;
}

std::string to_svg(const ScanResult& result) { return render_svg(scan_panels(result)); }

void write_text(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) throw Error(ErrorKind::Io, "write to '" + path.string() + "' failed");
}

std::filesystem::path emit(const ScanResult& result, std::string_view format, const std::filesystem::path& dir,
                           std::string_view name) {
    std::error_code ec;
    if (!dir.empty()) std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create '" + dir.string() + "': " + ec.message());
    const std::filesystem::path path = dir / (std::string(name) + "." + std::string(format));
    if (format == "csv") {
        write_text(path, to_csv(result));
    } else if (format == "json") {
        write_text(path, to_json(result));
    } else if (format == "svg") {
        write_text(path, to_svg(result));
    } else {
        throw Error(ErrorKind::Configuration, "unknown output format '" + std::string(format) + "'");
    }
    return path;
}

}  // namespace mollow
