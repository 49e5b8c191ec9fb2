// svg.hpp: self-contained SVG charts with byte-stable output.
//
// Coordinates are printed with two decimals and labels with a fixed
// significant-digit format, so identical input always yields identical bytes.

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sshqed/classify.hpp"
#include "sshqed/response.hpp"
#include "sshqed/spectra.hpp"
#include "sshqed/sweep.hpp"
#include "sshqed/tracking.hpp"

namespace sshqed::svg {

class EmptyDataset : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Category {
  std::string name;
  std::string color;
};

// One polyline per series; consecutive points sharing a category are drawn
// as one run in that category's color.
struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<std::size_t> category;
};

struct LineChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Category> categories;
  std::vector<Series> series;
};

struct Overlay {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

// cells[ix * ny + iy] indexes categories.
struct Heatmap {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<double> x_grid;
  std::vector<double> y_grid;
  std::vector<std::size_t> cells;
  std::vector<Category> categories;
  std::optional<Overlay> overlay;
};

struct BarPanel {
  std::string title;
  std::vector<double> values;  // bar k sits at x = k + 1
  std::string color{"#1f77b4"};
};

struct BarChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<BarPanel> panels;
};

std::string render(const LineChart& chart);
std::string render(const Heatmap& map);
std::string render(const BarChart& chart);

// Domain adapters.
std::vector<Category> label_categories();
LineChart sweep_chart(const SpectrumSweep& sweep, const std::string& title);
Heatmap phase_chart(const PhaseDiagram& diagram, const std::string& title, bool overlay_boundary);
LineChart inversion_chart(const InversionTrace& trace, const std::string& title);
// |ψ_j|² of every non-bulk state, one panel each; falls back to the level
// nearest zero energy when all states are bulk.
BarChart distribution_chart(const Spectrum& spectrum, const EdgeReport& report,
                            const std::string& title);
BarChart response_chart(const std::vector<ResponseProfile>& profiles,
                        const std::vector<std::string>& panel_titles, const std::string& title);

}  // namespace sshqed::svg
