#include "sshqed/sweep.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "sshqed/errors.hpp"
#include "sshqed/parallel.hpp"
#include "sshqed/spectra.hpp"

namespace sshqed {

std::vector<double> linspace(double a, double b, std::size_t n) {
  if (n == 0) throw std::invalid_argument("linspace: n must be >= 1");
  if (n == 1) return {a};
  std::vector<double> out(n);
  const double step = (b - a) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = a + step * static_cast<double>(i);
  out.back() = b;
  return out;
}

void validate_grid(std::span<const double> grid, const std::string& name) {
  if (grid.empty()) throw SweepError(name + " grid is empty", std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw SweepError(name + " grid has a non-finite value", grid[i]);
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw SweepError(name + " grid is not strictly increasing", grid[i]);
  }
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kAngleSlack = 1e-12;

void check_range(std::span<const double> grid, const std::string& name, double lo, double hi) {
  for (double x : grid)
    if (x < lo - kAngleSlack || x > hi + kAngleSlack)
      throw SweepError(name + " grid value out of range", x);
}

}  // namespace

SpectrumSweep sweep_parameter(const std::string& axis, std::span<const double> grid,
                              const ChainBuilder& builder, ClassifierConfig config) {
  validate_grid(grid, axis);
  SpectrumSweep out;
  out.axis = axis;
  out.grid.assign(grid.begin(), grid.end());
  out.points.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const double p = grid[i];
    try {
      const EffectiveChain chain = builder(p);
      const Spectrum spec = eigendecompose(chain);
      out.points[i].parameter = p;
      out.points[i].energies = spec.energies;
      out.points[i].report = classify_spectrum(spec, chain, config);
    } catch (const SweepError&) {
      throw;
    } catch (const std::exception& e) {
      throw SweepError(axis + "=" + std::to_string(p) + ": " + e.what(), p);
    }
  });
  return out;
}

SpectrumSweep sweep_theta(std::size_t n_sites, const Potentials& potentials,
                          std::span<const double> theta_grid, Boundary boundary,
                          ClassifierConfig config) {
  validate_grid(theta_grid, "theta");
  check_range(theta_grid, "theta", 0.0, kTwoPi);
  return sweep_parameter(
      "theta", theta_grid,
      [&](double theta) { return chain_from_theta(n_sites, {theta}, potentials, boundary); },
      config);
}

SpectrumSweep sweep_phi(std::size_t n_sites, double theta, double V,
                        std::span<const double> phi_grid, ClassifierConfig config) {
  return sweep_parameter(
      "phi", phi_grid, [&](double phi) { return bilateral_chain(n_sites, theta, V, phi); },
      config);
}

double boundary_unilateral(double theta) { return ThetaSpec{theta}.t2(); }

const char* to_string(Region r) noexcept {
  switch (r) {
    case Region::I: return "I";
    case Region::II: return "II";
    case Region::III: return "III";
  }
  return "I";
}

const char* to_string(DiagramKind k) noexcept {
  return k == DiagramKind::unilateral ? "unilateral" : "bilateral";
}

Region region_from_string(const std::string& s) {
  if (s == "I") return Region::I;
  if (s == "II") return Region::II;
  if (s == "III") return Region::III;
  throw std::invalid_argument("unknown region: " + s);
}

DiagramKind diagram_kind_from_string(const std::string& s) {
  if (s == "unilateral") return DiagramKind::unilateral;
  if (s == "bilateral") return DiagramKind::bilateral;
  throw std::invalid_argument("unknown diagram kind: " + s);
}

Region region_unilateral(const LabelCounts& counts) noexcept {
  if (counts.nontopological > 0) return Region::III;
  return counts.topological > 0 ? Region::I : Region::II;
}

Region region_bilateral(const LabelCounts& counts) noexcept {
  if (counts.nontopological <= 1) return Region::I;
  return counts.topological > 0 ? Region::II : Region::III;
}

namespace {

PhaseDiagram fill_diagram(PhaseDiagram d, const std::function<EffectiveChain(double, double)>& build,
                          Region (*region)(const LabelCounts&) noexcept, ClassifierConfig config) {
  const std::size_t nx = d.x_grid.size();
  const std::size_t ny = d.y_grid.size();
  d.cells.assign(nx * ny, Region::II);
  parallel_for(nx * ny, [&](std::size_t k) {
    const double x = d.x_grid[k / ny];
    const double y = d.y_grid[k % ny];
    try {
      const EffectiveChain chain = build(x, y);
      const Spectrum spec = eigendecompose(chain);
      d.cells[k] = region(classify_spectrum(spec, chain, config).counts);
    } catch (const std::exception& e) {
      throw SweepError(d.x_name + "=" + std::to_string(x) + ", " + d.y_name + "=" +
                           std::to_string(y) + ": " + e.what(),
                       x);
    }
  });
  return d;
}

}  // namespace

PhaseDiagram phase_diagram_unilateral(std::span<const double> V_grid,
                                      std::span<const double> theta_grid, std::size_t n_sites,
                                      ClassifierConfig config) {
  validate_grid(V_grid, "V1");
  validate_grid(theta_grid, "theta");
  check_range(theta_grid, "theta", 0.0, kTwoPi);
  if (V_grid.front() < 0.0) throw SweepError("V1 grid must be >= 0", V_grid.front());
  PhaseDiagram d;
  d.kind = DiagramKind::unilateral;
  d.x_name = "V1";
  d.x_grid.assign(V_grid.begin(), V_grid.end());
  d.y_name = "theta";
  d.y_grid.assign(theta_grid.begin(), theta_grid.end());
  d.n_sites = n_sites;
  return fill_diagram(
      std::move(d),
      [n_sites](double V1, double theta) {
        Potentials pots;
        if (V1 != 0.0) pots[1] = V1;
        return chain_from_theta(n_sites, {theta}, pots);
      },
      region_unilateral, config);
}

PhaseDiagram phase_diagram_bilateral(std::span<const double> phi_grid,
                                     std::span<const double> theta_grid, double V,
                                     std::size_t n_sites, ClassifierConfig config) {
  validate_grid(phi_grid, "phi");
  validate_grid(theta_grid, "theta");
  check_range(phi_grid, "phi", 0.0, std::numbers::pi);
  check_range(theta_grid, "theta", 0.0, kTwoPi);
  PhaseDiagram d;
  d.kind = DiagramKind::bilateral;
  d.x_name = "phi";
  d.x_grid.assign(phi_grid.begin(), phi_grid.end());
  d.y_name = "theta";
  d.y_grid.assign(theta_grid.begin(), theta_grid.end());
  d.V = V;
  d.n_sites = n_sites;
  return fill_diagram(
      std::move(d),
      [n_sites, V](double phi, double theta) { return bilateral_chain(n_sites, theta, V, phi); },
      region_bilateral, config);
}

double nontopological_onset(double theta, std::span<const double> V_grid, std::size_t n_sites,
                            ClassifierConfig config) {
  validate_grid(V_grid, "V1");
  std::vector<char> present(V_grid.size(), 0);
  parallel_for(V_grid.size(), [&](std::size_t i) {
    Potentials pots;
    if (V_grid[i] != 0.0) pots[1] = V_grid[i];
    const EffectiveChain chain = chain_from_theta(n_sites, {theta}, pots);
    const Spectrum spec = eigendecompose(chain);
    present[i] = classify_spectrum(spec, chain, config).counts.nontopological > 0;
  });
  for (std::size_t i = 0; i < V_grid.size(); ++i)
    if (present[i]) return V_grid[i];
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace sshqed
