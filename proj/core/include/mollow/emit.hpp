#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mollow/scan.hpp"

namespace mollow {

inline constexpr std::string_view kCsvHeader = "axis,n_a,g2,d_na,d_g2,residual,n_cavity,n_mech";

// Absent optional values are written as empty fields. A failed scan gets a
// trailing "# FAILED ..." comment line after the partial rows.
std::string to_csv(const ScanResult& result);
std::vector<ScanRow> parse_csv(std::string_view text);

std::string to_json(const ScanResult& result);

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotPanel {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    std::vector<PlotSeries> series;
};

// Vertically stacked line-plot panels in one SVG document.
std::string render_svg(const std::vector<PlotPanel>& panels);

// Panels for n_a, g2 and (when present) d_g2 against the scan axis; the
// baseline series is drawn alongside when deviations were computed.
std::vector<PlotPanel> scan_panels(const ScanResult& result);
std::string to_svg(const ScanResult& result);

std::string axis_label(Axis axis);

// Writes <dir>/<name>.<format>; returns the path. Throws ErrorKind::Io.
std::filesystem::path emit(const ScanResult& result, std::string_view format,
                           const std::filesystem::path& dir, std::string_view name);

void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace mollow
