// model.hpp: effective photon-hopping chains of a qubit-assisted resonator lattice.
//
// Energies are in units of the bare coupling g0 = G0 = 1. Sites and bonds are
// 1-based in the public API: bond j couples sites j and j+1.

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace sshqed {

enum class Boundary { open, periodic };

const char* to_string(Boundary b) noexcept;
Boundary boundary_from_string(const std::string& s);

// Sparse onsite energies keyed by 1-based site.
using Potentials = std::map<std::size_t, double>;

struct PhysicalParams {
  std::size_t n_sites{0};
  double delta_c{0.0};  // resonator detuning  ω_c − ω_d
  double delta_q{0.0};  // in-module qubit detuning  ω_q − ω_d
  double delta_Q{0.0};  // junction qubit detuning  ω_Q − ω_d
  std::vector<double> g;  // per-site resonator-qubit couplings, length N
  std::vector<double> G;  // per-junction couplings, length N

  static PhysicalParams from_frequencies(std::size_t n_sites, double omega_c, double omega_d,
                                         double omega_q, double omega_Q, std::vector<double> g,
                                         std::vector<double> G);
};

struct EffectiveChain {
  std::size_t n_sites{0};
  // Open: N−1 bonds. Periodic: N bonds, the last one closing N↔1.
  std::vector<double> hoppings;
  Potentials potentials;
  Boundary boundary{Boundary::open};

  double potential_at(std::size_t site) const;
  double bond(std::size_t j) const { return hoppings.at(j - 1); }

  // Mirror image: site s ↦ N+1−s. Open chains only.
  EffectiveChain reversed() const;

  bool operator==(const EffectiveChain&) const = default;
};

// Dimerization angle parametrization, t1/t2 = base·(1 ± cos θ / 2).
struct ThetaSpec {
  double theta{0.0};
  double base{1.0};

  double t1() const;
  double t2() const;
};

struct ZeroPointOption {
  bool subtract{true};
};

// Dispersive endpoint of the qubit-mediated lattice. Throws ZeroDetuning or
// LengthMismatch.
EffectiveChain effective_from_physical(const PhysicalParams& p, Boundary boundary,
                                       ZeroPointOption zero_point = {});

// Interior sites n ∈ 2..N−1 whose qubit shifts fail to cancel,
// |g_n²/Δ_q + 2G_n²/Δ_Q| > tol.
std::vector<std::size_t> check_cancellation(const PhysicalParams& p, double tol);

// Odd bonds get t1(θ), even bonds t2(θ). Throws BadSite for potentials outside 1..N.
EffectiveChain chain_from_theta(std::size_t n_sites, ThetaSpec spec, const Potentials& potentials,
                                Boundary boundary = Boundary::open);

// (V cos φ, V sin φ): end potentials of the bilateral pattern.
std::pair<double, double> bilateral_potentials(double V, double phi);

// Convenience: θ-chain with V cos φ on site 1 and V sin φ on site N.
EffectiveChain bilateral_chain(std::size_t n_sites, double theta, double V, double phi);

void validate(const EffectiveChain& chain);

}  // namespace sshqed
