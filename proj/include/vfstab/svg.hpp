#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace vfstab::svg {

struct Series {
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f77b4";
    std::string label;
    bool markers = false;  // draw points instead of a polyline
    bool dashed = false;
};

struct Axes {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    bool log_x = false;
    std::optional<std::pair<double, double>> xlim;
    std::optional<std::pair<double, double>> ylim;
};

/// Line/scatter plot. Data outside explicit limits is clipped.
std::string line_plot(const Axes& axes, const std::vector<Series>& series);

/// Stack of plots sharing one canvas, one per row.
std::string panels(const std::vector<std::pair<Axes, std::vector<Series>>>& rows);

struct Heatmap {
    std::vector<double> x;       // column centers
    std::vector<double> y;       // row centers
    std::vector<double> values;  // row-major, y outer
    std::vector<bool> flagged;   // optional per-cell outline
    std::string colorbar_label;
};

/// Heatmap with optional overlays drawn in data coordinates.
std::string heatmap(const Axes& axes, const Heatmap& map, const std::vector<Series>& overlays = {});

}  // namespace vfstab::svg
