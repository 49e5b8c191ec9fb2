// sweep.hpp: parameter sweeps, phase diagrams and the analytic boundary.

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sshqed/classify.hpp"
#include "sshqed/model.hpp"

namespace sshqed {

// n evenly spaced points from a to b inclusive (n ≥ 1; n = 1 gives {a}).
std::vector<double> linspace(double a, double b, std::size_t n);

// Throws SweepError unless the grid is finite and strictly increasing.
void validate_grid(std::span<const double> grid, const std::string& name);

struct SweepPoint {
  double parameter{0.0};
  std::vector<double> energies;
  EdgeReport report;

  bool operator==(const SweepPoint&) const = default;
};

struct SpectrumSweep {
  std::string axis;
  std::vector<double> grid;
  std::vector<SweepPoint> points;  // points[i] belongs to grid[i]

  bool operator==(const SpectrumSweep&) const = default;
};

using ChainBuilder = std::function<EffectiveChain(double)>;

// Diagonalizes and classifies builder(p) for every grid value, in parallel
// with serial-identical output. Failures surface as SweepError carrying p.
SpectrumSweep sweep_parameter(const std::string& axis, std::span<const double> grid,
                              const ChainBuilder& builder, ClassifierConfig config = {});

// θ sweep at fixed potentials. Grid must lie in [0, 2π].
SpectrumSweep sweep_theta(std::size_t n_sites, const Potentials& potentials,
                          std::span<const double> theta_grid,
                          Boundary boundary = Boundary::open, ClassifierConfig config = {});

// φ sweep of the bilateral pattern (V cos φ, V sin φ) at fixed θ.
SpectrumSweep sweep_phi(std::size_t n_sites, double theta, double V,
                        std::span<const double> phi_grid, ClassifierConfig config = {});

// V = t2(θ) = 1 − cos θ / 2, where the end potential first binds a state
// outside the bands.
double boundary_unilateral(double theta);

enum class Region { I, II, III };
enum class DiagramKind { unilateral, bilateral };

const char* to_string(Region r) noexcept;
const char* to_string(DiagramKind k) noexcept;
Region region_from_string(const std::string& s);
DiagramKind diagram_kind_from_string(const std::string& s);

// Unilateral: I = topological only, II = trivial, III = nontopological present.
Region region_unilateral(const LabelCounts& counts) noexcept;
// Bilateral: I = at most one nontopological, II = two or more with topological
// states, III = two or more without.
Region region_bilateral(const LabelCounts& counts) noexcept;

struct PhaseDiagram {
  DiagramKind kind{DiagramKind::unilateral};
  std::string x_name;
  std::vector<double> x_grid;
  std::string y_name;
  std::vector<double> y_grid;
  std::vector<Region> cells;  // x-major: cells[ix * ny + iy]
  double V{0.0};              // fixed budget of a bilateral diagram
  std::size_t n_sites{0};

  Region at(std::size_t ix, std::size_t iy) const { return cells.at(ix * y_grid.size() + iy); }
  bool operator==(const PhaseDiagram&) const = default;
};

// x = V1 on site 1, y = θ.
PhaseDiagram phase_diagram_unilateral(std::span<const double> V_grid,
                                      std::span<const double> theta_grid, std::size_t n_sites,
                                      ClassifierConfig config = {});

// x = φ ∈ [0, π], y = θ, at potential budget V.
PhaseDiagram phase_diagram_bilateral(std::span<const double> phi_grid,
                                     std::span<const double> theta_grid, double V,
                                     std::size_t n_sites, ClassifierConfig config = {});

// First grid V1 at which a NontopologicalEdge state appears at fixed θ, or
// NaN if none does.
double nontopological_onset(double theta, std::span<const double> V_grid, std::size_t n_sites,
                            ClassifierConfig config = {});

}  // namespace sshqed
