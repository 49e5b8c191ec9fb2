#include "sshqed_cli/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace sshqed::svg {

namespace {

constexpr double kWidth = 760.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 72.0;
constexpr double kRight = 160.0;
constexpr double kTop = 44.0;
constexpr double kBottom = 56.0;

std::string px(double v) {
  if (std::abs(v) < 0.005) v = 0.0;
  char buf[48];
  auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
  return std::string(buf, r.ptr);
}

std::string tick_text(double v) {
  if (std::abs(v) < 1e-12) v = 0.0;
  char buf[48];
  auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 4);
  return std::string(buf, r.ptr);
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo{0.0};
  double hi{1.0};

  double span() const { return hi - lo; }
};

Range widen(double lo, double hi, double pad_fraction) {
  if (!(hi > lo)) {
    const double d = std::max(1.0, std::abs(lo)) * 0.5;
    return {lo - d, hi + d};
  }
  const double pad = (hi - lo) * pad_fraction;
  return {lo - pad, hi + pad};
}

std::vector<double> nice_ticks(Range r) {
  const double raw = r.span() / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / mag;
  const double step = (f < 1.5 ? 1.0 : f < 3.0 ? 2.0 : f < 7.0 ? 5.0 : 10.0) * mag;
  std::vector<double> ticks;
  for (double k = std::ceil(r.lo / step - 1e-9); k * step <= r.hi + 1e-9 * step; k += 1.0)
    ticks.push_back(k * step);
  return ticks;
}

class Doc {
 public:
  Doc(double w, double h) {
    os_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px(w) << "\" height=\"" << px(h)
        << "\" viewBox=\"0 0 " << px(w) << ' ' << px(h)
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os_ << "<rect x=\"0\" y=\"0\" width=\"" << px(w) << "\" height=\"" << px(h) << "\" fill=\"#ffffff\"/>\n";
  }

  std::ostringstream& os() { return os_; }

  void text(double x, double y, const std::string& s, const char* anchor = "middle", int size = 12,
            const char* extra = "") {
    os_ << "<text x=\"" << px(x) << "\" y=\"" << px(y) << "\" text-anchor=\"" << anchor << '"';
    if (size != 12) os_ << " font-size=\"" << size << '"';
    os_ << extra << '>' << escape(s) << "</text>\n";
  }

  void line(double x1, double y1, double x2, double y2, const char* stroke = "#000000") {
    os_ << "<line x1=\"" << px(x1) << "\" y1=\"" << px(y1) << "\" x2=\"" << px(x2) << "\" y2=\"" << px(y2)
        << "\" stroke=\"" << stroke << "\" stroke-width=\"1\"/>\n";
  }

  void rect(double x, double y, double w, double h, const std::string& fill) {
    os_ << "<rect x=\"" << px(x) << "\" y=\"" << px(y) << "\" width=\"" << px(w) << "\" height=\"" << px(h)
        << "\" fill=\"" << fill << "\"/>\n";
  }

  std::string finish() {
    os_ << "</svg>\n";
    return os_.str();
  }

 private:
  std::ostringstream os_;
};

// Plot frame in pixel space with data ranges on both axes.
struct Frame {
  double left, top, width, height;
  Range x, y;

  double sx(double v) const { return left + (v - x.lo) / x.span() * width; }
  double sy(double v) const { return top + height - (v - y.lo) / y.span() * height; }
};

void draw_axes(Doc& doc, const Frame& f, const std::string& x_label, const std::string& y_label,
               bool x_ticks = true) {
  doc.os() << "<g class=\"axes\">\n";
  doc.line(f.left, f.top + f.height, f.left + f.width, f.top + f.height);
  doc.line(f.left, f.top, f.left, f.top + f.height);
  if (x_ticks) {
    for (double t : nice_ticks(f.x)) {
      if (t < f.x.lo - 1e-12 || t > f.x.hi + 1e-12) continue;
      const double x = f.sx(t);
      doc.line(x, f.top + f.height, x, f.top + f.height + 4);
      doc.text(x, f.top + f.height + 17, tick_text(t));
    }
  }
  for (double t : nice_ticks(f.y)) {
    if (t < f.y.lo - 1e-12 || t > f.y.hi + 1e-12) continue;
    const double y = f.sy(t);
    doc.line(f.left - 4, y, f.left, y);
    doc.text(f.left - 7, y + 4, tick_text(t), "end");
  }
  doc.text(f.left + f.width / 2, f.top + f.height + 38, x_label);
  const double ly = f.top + f.height / 2;
  doc.text(f.left - 48, ly, y_label, "middle", 12,
           (" transform=\"rotate(-90 " + px(f.left - 48) + ' ' + px(ly) + ")\"").c_str());
  doc.os() << "</g>\n";
}

void draw_legend(Doc& doc, double x, double y, const std::vector<Category>& cats) {
  doc.os() << "<g class=\"legend\">\n";
  for (std::size_t k = 0; k < cats.size(); ++k) {
    const double yy = y + 20.0 * static_cast<double>(k);
    doc.rect(x, yy - 10, 14, 14, cats[k].color);
    doc.text(x + 20, yy + 1, cats[k].name, "start");
  }
  doc.os() << "</g>\n";
}

void polyline(Doc& doc, const Frame& f, const std::vector<double>& xs, const std::vector<double>& ys,
              std::size_t from, std::size_t to, const std::string& color, double width = 1.2) {
  doc.os() << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << px(width)
           << "\" points=\"";
  for (std::size_t i = from; i < to; ++i) {
    if (i > from) doc.os() << ' ';
    doc.os() << px(f.sx(xs[i])) << ',' << px(f.sy(ys[i]));
  }
  doc.os() << "\"/>\n";
}

const std::string& category_color(const std::vector<Category>& cats, std::size_t k) {
  static const std::string fallback = "#000000";
  return k < cats.size() ? cats[k].color : fallback;
}

std::vector<double> in_units_of_pi(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [](double x) { return x / std::numbers::pi; });
  return out;
}

bool angular(const std::string& axis) { return axis == "theta" || axis == "phi"; }

std::string axis_title(const std::string& axis) {
  if (axis == "theta") return "theta / pi";
  if (axis == "phi") return "phi / pi";
  return axis;
}

std::string category_name(StateLabel l) {
  switch (l) {
    case StateLabel::Bulk: return "bulk";
    case StateLabel::TopologicalEdge: return "topological edge";
    case StateLabel::NontopologicalEdge: return "nontopological edge";
    case StateLabel::BoundState: return "bound state";
  }
  return "";
}

}  // namespace

std::string render(const LineChart& chart) {
  bool any = false;
  double xlo = INFINITY, xhi = -INFINITY, ylo = INFINITY, yhi = -INFINITY;
  for (const auto& s : chart.series) {
    if (s.x.size() != s.y.size() || s.category.size() != s.x.size())
      throw std::invalid_argument("line series '" + s.name + "': x, y and category lengths differ");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      any = true;
      xlo = std::min(xlo, s.x[i]);
      xhi = std::max(xhi, s.x[i]);
      ylo = std::min(ylo, s.y[i]);
      yhi = std::max(yhi, s.y[i]);
    }
  }
  if (!any) throw EmptyDataset("line chart '" + chart.title + "' has no finite points");

  Doc doc(kWidth, kHeight);
  const Frame f{kLeft, kTop, kWidth - kLeft - kRight, kHeight - kTop - kBottom,
                xhi > xlo ? Range{xlo, xhi} : widen(xlo, xhi, 0.0), widen(ylo, yhi, 0.05)};
  doc.text(kWidth / 2, 24, chart.title, "middle", 14);
  draw_axes(doc, f, chart.x_label, chart.y_label);

  for (const auto& s : chart.series) {
    doc.os() << "<g class=\"series\" data-name=\"" << escape(s.name) << "\">\n";
    std::size_t start = 0;
    while (start < s.x.size()) {
      std::size_t end = start + 1;
      while (end < s.x.size() && s.category[end] == s.category[start]) ++end;
      // Each run reaches back one point so consecutive runs join up.
      const std::size_t from = start > 0 ? start - 1 : start;
      if (end - from >= 2) {
        polyline(doc, f, s.x, s.y, from, end, category_color(chart.categories, s.category[start]));
      } else {
        doc.os() << "<circle cx=\"" << px(f.sx(s.x[start])) << "\" cy=\"" << px(f.sy(s.y[start]))
                 << "\" r=\"1.5\" fill=\"" << category_color(chart.categories, s.category[start]) << "\"/>\n";
      }
      start = end;
    }
    doc.os() << "</g>\n";
  }
  draw_legend(doc, kWidth - kRight + 16, kTop + 10, chart.categories);
  return doc.finish();
}

std::string render(const Heatmap& map) {
  const std::size_t nx = map.x_grid.size(), ny = map.y_grid.size();
  if (nx == 0 || ny == 0) throw EmptyDataset("heatmap '" + map.title + "' has an empty grid");
  if (map.cells.size() != nx * ny) throw std::invalid_argument("heatmap cell count does not match the grid");

  Doc doc(kWidth, kHeight);
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  const double cw = pw / static_cast<double>(nx), ch = ph / static_cast<double>(ny);
  // Cell centers sit on grid values; the frame extends half a cell past the ends.
  auto half = [](const std::vector<double>& g) {
    return g.size() > 1 ? (g.back() - g.front()) / static_cast<double>(g.size() - 1) / 2.0 : 0.5;
  };
  const Frame f{kLeft, kTop, pw, ph,
                Range{map.x_grid.front() - half(map.x_grid), map.x_grid.back() + half(map.x_grid)},
                Range{map.y_grid.front() - half(map.y_grid), map.y_grid.back() + half(map.y_grid)}};
  doc.text(kWidth / 2, 24, map.title, "middle", 14);

  doc.os() << "<g class=\"cells\" shape-rendering=\"crispEdges\">\n";
  for (std::size_t ix = 0; ix < nx; ++ix) {
    std::size_t iy = 0;
    while (iy < ny) {
      const std::size_t c = map.cells[ix * ny + iy];
      std::size_t end = iy + 1;
      while (end < ny && map.cells[ix * ny + end] == c) ++end;
      doc.rect(kLeft + static_cast<double>(ix) * cw, kTop + ph - static_cast<double>(end) * ch, cw,
               static_cast<double>(end - iy) * ch, category_color(map.categories, c));
      iy = end;
    }
  }
  doc.os() << "</g>\n";

  if (map.overlay) {
    const Overlay& o = *map.overlay;
    doc.os() << "<g class=\"overlay\" data-name=\"" << escape(o.name) << "\">\n";
    std::size_t i = 0;
    while (i < o.x.size()) {
      auto inside = [&](std::size_t k) { return o.x[k] >= f.x.lo && o.x[k] <= f.x.hi && o.y[k] >= f.y.lo && o.y[k] <= f.y.hi; };
      while (i < o.x.size() && !inside(i)) ++i;
      std::size_t end = i;
      while (end < o.x.size() && inside(end)) ++end;
      if (end - i >= 2) polyline(doc, f, o.x, o.y, i, end, "#000000", 1.5);
      i = end;
    }
    doc.os() << "</g>\n";
  }

  draw_axes(doc, f, map.x_label, map.y_label);
  draw_legend(doc, kWidth - kRight + 16, kTop + 10, map.categories);
  return doc.finish();
}

std::string render(const BarChart& chart) {
  if (chart.panels.empty()) throw EmptyDataset("bar chart '" + chart.title + "' has no panels");
  for (const auto& p : chart.panels)
    if (p.values.empty()) throw EmptyDataset("bar panel '" + p.title + "' is empty");

  constexpr double panel_h = 220.0;
  const double height = 40.0 + panel_h * static_cast<double>(chart.panels.size());
  Doc doc(kWidth, height);
  doc.text(kWidth / 2, 24, chart.title, "middle", 14);

  const double pw = kWidth - kLeft - 40.0;
  for (std::size_t k = 0; k < chart.panels.size(); ++k) {
    const BarPanel& p = chart.panels[k];
    const double top = 40.0 + panel_h * static_cast<double>(k) + 28.0;
    const double ph = panel_h - 28.0 - kBottom;
    double vmax = 0.0;
    for (double v : p.values)
      if (std::isfinite(v)) vmax = std::max(vmax, v);
    if (vmax <= 0.0) vmax = 1.0;
    const auto n = static_cast<double>(p.values.size());
    const Frame f{kLeft, top, pw, ph, Range{0.5, n + 0.5}, Range{0.0, vmax * 1.05}};

    doc.os() << "<g class=\"panel\">\n";
    doc.text(kLeft + pw / 2, top - 8, p.title);
    const double bw = pw / n;
    for (std::size_t j = 0; j < p.values.size(); ++j) {
      const double v = std::isfinite(p.values[j]) ? std::max(0.0, p.values[j]) : 0.0;
      const double y = f.sy(v);
      doc.rect(f.sx(static_cast<double>(j) + 0.5) + bw * 0.1, y, bw * 0.8, top + ph - y, p.color);
    }
    draw_axes(doc, f, chart.x_label, chart.y_label);
    doc.os() << "</g>\n";
  }
  return doc.finish();
}

std::vector<Category> label_categories() {
  return {{category_name(StateLabel::Bulk), "#9a9a9a"},
          {category_name(StateLabel::TopologicalEdge), "#d62728"},
          {category_name(StateLabel::NontopologicalEdge), "#1f77b4"},
          {category_name(StateLabel::BoundState), "#2ca02c"}};
}

LineChart sweep_chart(const SpectrumSweep& sweep, const std::string& title) {
  if (sweep.points.empty() || sweep.points.front().energies.empty())
    throw EmptyDataset("sweep '" + title + "' has no points");
  LineChart chart{title, axis_title(sweep.axis), "E / g0", label_categories(), {}};
  const std::vector<double> xs = angular(sweep.axis) ? in_units_of_pi(sweep.grid) : sweep.grid;
  const std::size_t levels = sweep.points.front().energies.size();
  chart.series.resize(levels);
  for (std::size_t m = 0; m < levels; ++m) {
    Series& s = chart.series[m];
    s.name = "level " + std::to_string(m + 1);
    s.x = xs;
    s.y.reserve(xs.size());
    s.category.reserve(xs.size());
  }
  for (const auto& p : sweep.points) {
    if (p.energies.size() != levels) throw std::invalid_argument("sweep points differ in level count");
    std::vector<StateLabel> labels(levels, StateLabel::Bulk);
    for (const auto& st : p.report.states)
      if (st.index >= 1 && st.index <= levels) labels[st.index - 1] = st.label;
    for (std::size_t m = 0; m < levels; ++m) {
      chart.series[m].y.push_back(p.energies[m]);
      chart.series[m].category.push_back(static_cast<std::size_t>(labels[m]));
    }
  }
  return chart;
}

Heatmap phase_chart(const PhaseDiagram& d, const std::string& title, bool overlay_boundary) {
  Heatmap map;
  map.title = title;
  map.x_label = d.x_name == "phi" ? "phi / pi" : d.x_name;
  map.y_label = axis_title(d.y_name);
  map.x_grid = d.x_name == "phi" ? in_units_of_pi(d.x_grid) : d.x_grid;
  map.y_grid = angular(d.y_name) ? in_units_of_pi(d.y_grid) : d.y_grid;
  map.cells.reserve(d.cells.size());
  for (Region r : d.cells) map.cells.push_back(static_cast<std::size_t>(r));
  map.categories = {{"region I", "#f4a582"}, {"region II", "#92c5de"}, {"region III", "#b8e186"}};
  if (overlay_boundary && !d.y_grid.empty()) {
    Overlay o{"V = t2(theta)", {}, {}};
    for (std::size_t i = 0; i < d.y_grid.size(); ++i) {
      o.x.push_back(boundary_unilateral(d.y_grid[i]));
      o.y.push_back(map.y_grid[i]);
    }
    map.overlay = std::move(o);
  }
  return map;
}

LineChart inversion_chart(const InversionTrace& trace, const std::string& title) {
  if (trace.phi_grid.empty()) throw EmptyDataset("inversion trace '" + title + "' is empty");
  LineChart chart{title, "phi / pi", "E / g0",
                  {{"green", "#2ca02c"}, {"red", "#d62728"}, {"purple", "#9467bd"}, {"blue", "#1f77b4"}},
                  {}};
  const auto xs = in_units_of_pi(trace.phi_grid);
  for (LevelRole r : kAllRoles) {
    const RoleTrace& tr = trace.trace(r);
    chart.series.push_back({to_string(r), xs, tr.energies,
                            std::vector<std::size_t>(xs.size(), static_cast<std::size_t>(r))});
  }
  return chart;
}

BarChart distribution_chart(const Spectrum& spectrum, const EdgeReport& report, const std::string& title) {
  if (spectrum.size() == 0) throw EmptyDataset("distribution '" + title + "' has no states");
  const auto cats = label_categories();
  BarChart chart{title, "site j", "|psi_j|^2", {}};
  auto add = [&](std::size_t index, StateLabel label) {
    const auto v = spectrum.vector(index - 1);
    BarPanel p;
    p.title = "level " + std::to_string(index) + " (" + category_name(label) +
              "), E = " + tick_text(spectrum.energies[index - 1]);
    p.color = cats[static_cast<std::size_t>(label)].color;
    for (double a : v) p.values.push_back(a * a);
    chart.panels.push_back(std::move(p));
  };
  for (const auto& st : report.states)
    if (st.label != StateLabel::Bulk) add(st.index, st.label);
  if (chart.panels.empty()) {
    std::size_t best = 0;
    for (std::size_t m = 1; m < spectrum.size(); ++m)
      if (std::abs(spectrum.energies[m]) < std::abs(spectrum.energies[best])) best = m;
    add(best + 1, StateLabel::Bulk);
  }
  return chart;
}

BarChart response_chart(const std::vector<ResponseProfile>& profiles,
                        const std::vector<std::string>& panel_titles, const std::string& title) {
  if (profiles.empty()) throw EmptyDataset("response chart '" + title + "' has no profiles");
  BarChart chart{title, "site j", "photon number", {}};
  for (std::size_t k = 0; k < profiles.size(); ++k) {
    BarPanel p;
    p.title = k < panel_titles.size() ? panel_titles[k] : "profile " + std::to_string(k + 1);
    p.values = profiles[k].photon_numbers;
    p.color = "#ff7f0e";
    chart.panels.push_back(std::move(p));
  }
  return chart;
}

}  // namespace sshqed::svg
