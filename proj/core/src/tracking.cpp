#include "sshqed/tracking.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "sshqed/errors.hpp"
#include "sshqed/parallel.hpp"
#include "sshqed/spectra.hpp"
#include "sshqed/sweep.hpp"

namespace sshqed {

const char* to_string(LevelRole r) noexcept {
  switch (r) {
    case LevelRole::green: return "green";
    case LevelRole::red: return "red";
    case LevelRole::purple: return "purple";
    case LevelRole::blue: return "blue";
  }
  return "green";
}

LevelRole level_role_from_string(const std::string& s) {
  for (LevelRole r : kAllRoles)
    if (s == to_string(r)) return r;
  throw std::invalid_argument("unknown level role: " + s);
}

std::vector<FlipEvent> InversionTrace::flips_of(LevelRole r) const {
  std::vector<FlipEvent> out;
  for (const auto& f : flips)
    if (f.role == r) out.push_back(f);
  return out;
}

std::vector<std::size_t> InversionTrace::index_sequence(LevelRole r) const {
  const auto& idx = trace(r).indices;
  std::vector<std::size_t> seq;
  for (std::size_t i : idx)
    if (seq.empty() || seq.back() != i) seq.push_back(i);
  const bool full_period =
      phi_grid.size() > 1 && phi_grid.back() - phi_grid.front() >= 2.0 * std::numbers::pi - 1e-9;
  if (full_period && seq.size() > 1 && seq.back() != seq.front()) seq.push_back(seq.front());
  return seq;
}

namespace {

constexpr std::size_t slot(LevelRole r) { return static_cast<std::size_t>(r); }

bool is_left(std::size_t center, std::size_t n) { return 2 * center <= n; }

std::optional<LevelRole> role_of(const StateClassification& s, std::size_t n) {
  const bool left = is_left(s.center, n);
  if (s.label == StateLabel::TopologicalEdge) return left ? LevelRole::green : LevelRole::red;
  if (s.label == StateLabel::NontopologicalEdge) return left ? LevelRole::blue : LevelRole::purple;
  return std::nullopt;
}

bool in_gap_role(LevelRole r) { return r == LevelRole::green || r == LevelRole::red; }
bool left_role(LevelRole r) { return r == LevelRole::green || r == LevelRole::blue; }

double median_spacing(const std::vector<double>& energies) {
  std::vector<double> gaps;
  for (std::size_t m = 1; m < energies.size(); ++m) gaps.push_back(energies[m] - energies[m - 1]);
  if (gaps.empty()) return 0.0;
  std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
  return gaps[gaps.size() / 2];
}

std::string interval_message(const std::string& what, double lo, double hi) {
  std::ostringstream os;
  os << what << " in phi interval [" << lo << ", " << hi << "]";
  return os.str();
}

// End potentials at grid point k. A potential that vanishes up to rounding
// keeps the sign it had at the previous grid point (the next one at k = 0),
// so a level stays put until its potential actually changes sign.
std::pair<double, double> end_potentials(std::span<const double> grid, std::size_t k, double V) {
  const double zero = 1e-12 * std::max(1.0, std::abs(V));
  auto [left, right] = bilateral_potentials(V, grid[k]);
  const std::size_t ref = k > 0 ? k - 1 : (grid.size() > 1 ? 1 : 0);
  const auto [left_ref, right_ref] = bilateral_potentials(V, grid[ref]);
  if (std::abs(left) <= zero) left = std::abs(left_ref) <= zero ? 0.0 : left_ref;
  if (std::abs(right) <= zero) right = std::abs(right_ref) <= zero ? 0.0 : right_ref;
  return {left, right};
}

}  // namespace

RoleAssignment assign_roles(const EdgeReport& report, double V_left, double V_right,
                            double phi_lo, double phi_hi) {
  const std::size_t n = report.states.size();
  RoleAssignment out;
  std::vector<char> held(n + 1, 0);
  for (const auto& s : report.states) {
    const auto r = role_of(s, n);
    if (!r) continue;
    if (out.occupied[slot(*r)]) {
      throw TrackingLost(interval_message(std::string("two candidates for the ") + to_string(*r) +
                                              " level",
                                          phi_lo, phi_hi),
                         phi_lo, phi_hi);
    }
    out.occupied[slot(*r)] = true;
    out.index[slot(*r)] = s.index;
    held[s.index] = 1;
  }

  for (LevelRole r : kAllRoles) {
    if (out.occupied[slot(r)]) continue;
    const double pot = left_role(r) ? V_left : V_right;
    std::optional<std::size_t> pick;
    for (const auto& s : report.states) {
      if (held[s.index]) continue;
      if (in_gap_role(r)) {
        // Top of the lower band for a repulsive end, bottom of the upper band
        // for an attractive one.
        if (pot >= 0.0 && s.energy < 0.0) pick = std::max(pick.value_or(0), s.index);
        if (pot < 0.0 && s.energy > 0.0 && (!pick || s.index < *pick)) pick = s.index;
      } else {
        if (pot >= 0.0) pick = std::max(pick.value_or(0), s.index);
        if (pot < 0.0 && (!pick || s.index < *pick)) pick = s.index;
      }
    }
    if (!pick) {
      throw TrackingLost(interval_message(std::string("no anchor state for the ") + to_string(r) +
                                              " level",
                                          phi_lo, phi_hi),
                         phi_lo, phi_hi);
    }
    out.index[slot(r)] = *pick;
  }
  return out;
}

InversionTrace trace_band_inversion(std::span<const double> phi_grid, double V,
                                    std::size_t n_sites, double theta_probe,
                                    ClassifierConfig config) {
  const SpectrumSweep sweep = sweep_phi(n_sites, theta_probe, V, phi_grid, config);

  InversionTrace out;
  out.phi_grid.assign(phi_grid.begin(), phi_grid.end());
  out.n_sites = n_sites;
  out.V = V;
  out.theta_probe = theta_probe;
  for (LevelRole r : kAllRoles) out.roles[slot(r)].role = r;

  const std::size_t np = phi_grid.size();
  for (std::size_t k = 0; k < np; ++k) {
    const double phi = phi_grid[k];
    const auto [V_left, V_right] = end_potentials(phi_grid, k, V);
    const double lo = k > 0 ? phi_grid[k - 1] : phi;
    const RoleAssignment a = assign_roles(sweep.points[k].report, V_left, V_right, lo, phi);
    for (LevelRole r : kAllRoles) {
      RoleTrace& t = out.roles[slot(r)];
      const auto& st = sweep.points[k].report.states[a.index[slot(r)] - 1];
      t.indices.push_back(st.index);
      t.energies.push_back(st.energy);
      t.labels.push_back(st.label);
      t.occupied.push_back(a.occupied[slot(r)] ? 1 : 0);
    }
  }

  for (LevelRole r : kAllRoles) {
    const RoleTrace& t = out.roles[slot(r)];
    for (std::size_t k = 1; k < np; ++k) {
      if (t.occupied[k] && t.occupied[k - 1]) {
        const double limit = 3.0 * median_spacing(sweep.points[k - 1].energies);
        if (std::abs(t.energies[k] - t.energies[k - 1]) > limit) {
          throw TrackingLost(interval_message(std::string("energy jump of the ") + to_string(r) +
                                                  " level",
                                              phi_grid[k - 1], phi_grid[k]),
                             phi_grid[k - 1], phi_grid[k]);
        }
      }
      if (t.indices[k] != t.indices[k - 1]) {
        out.flips.push_back(
            {r, 0.5 * (phi_grid[k - 1] + phi_grid[k]), t.indices[k - 1], t.indices[k]});
      }
    }
  }
  return out;
}

}  // namespace sshqed
