// tracking.hpp: band-inversion bookkeeping of the four end-localized levels
// of the bilateral chain as φ moves the potential budget between the ends.

#pragma once

#include <array>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "sshqed/classify.hpp"

namespace sshqed {

// green/red: in-gap levels at the left/right end; blue/purple: out-of-band
// levels at the left/right end.
enum class LevelRole { green, red, purple, blue };

inline constexpr std::array<LevelRole, 4> kAllRoles{LevelRole::green, LevelRole::red,
                                                    LevelRole::purple, LevelRole::blue};

const char* to_string(LevelRole r) noexcept;
LevelRole level_role_from_string(const std::string& s);

struct FlipEvent {
  LevelRole role{LevelRole::green};
  double phi{0.0};  // midpoint of the grid interval where the index changed
  std::size_t from{0};
  std::size_t to{0};

  bool operator==(const FlipEvent&) const = default;
};

struct RoleTrace {
  LevelRole role{LevelRole::green};
  std::vector<std::size_t> indices;  // 1-based, one per φ
  std::vector<double> energies;
  std::vector<StateLabel> labels;
  std::vector<char> occupied;  // 1 where a classified state fills the role

  bool operator==(const RoleTrace&) const = default;
};

struct InversionTrace {
  std::vector<double> phi_grid;
  std::size_t n_sites{0};
  double V{0.0};
  double theta_probe{0.0};
  std::array<RoleTrace, 4> roles;  // ordered as kAllRoles
  std::vector<FlipEvent> flips;    // grouped by role, ascending φ within a role

  const RoleTrace& trace(LevelRole r) const { return roles[static_cast<std::size_t>(r)]; }
  std::vector<FlipEvent> flips_of(LevelRole r) const;

  // Distinct consecutive indices. When the grid spans a full period and the
  // last index differs from the first, the first is appended to close the cycle.
  std::vector<std::size_t> index_sequence(LevelRole r) const;

  bool operator==(const InversionTrace&) const = default;
};

// Role occupant at one φ. An occupied role takes the classified state's index;
// a vacant role takes the band-edge index where its level has merged, picked
// by the sign of the end potential. Throws TrackingLost on a doubly filled role.
struct RoleAssignment {
  std::array<std::size_t, 4> index{};
  std::array<bool, 4> occupied{};
};
RoleAssignment assign_roles(const EdgeReport& report, double V_left, double V_right,
                            double phi_lo = 0.0, double phi_hi = 0.0);

// Throws TrackingLost when a role holds two states at one φ, or an occupied
// role's energy jumps by more than 3× the median level spacing between
// neighbouring φ points.
InversionTrace trace_band_inversion(std::span<const double> phi_grid, double V,
                                    std::size_t n_sites, double theta_probe = 0.01 * std::numbers::pi,
                                    ClassifierConfig config = {});

}  // namespace sshqed
