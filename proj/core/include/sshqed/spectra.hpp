// spectra.hpp: single-excitation Hamiltonian of an effective chain and its
// full eigendecomposition.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sshqed/eigensolver.hpp"
#include "sshqed/model.hpp"

namespace sshqed {

struct HamiltonianMatrix {
  std::size_t n{0};
  std::vector<double> diag;     // onsite potentials
  std::vector<double> offdiag;  // bonds, n−1 entries
  std::optional<double> corner;  // periodic bond N↔1

  double max_norm() const;
  DenseMatrix to_dense() const;
  // y = H·x
  std::vector<double> apply(std::span<const double> x) const;
};

HamiltonianMatrix build_hamiltonian(const EffectiveChain& chain);

// Ascending energies with orthonormal eigenvectors. Eigenvalues closer than
// the tie tolerance form a cluster whose basis is rotated to be maximally
// localized and ordered by localization center. Each vector's first
// significant entry is positive.
struct Spectrum {
  std::vector<double> energies;
  DenseMatrix vectors;  // column m pairs with energies[m]

  std::size_t size() const noexcept { return energies.size(); }
  std::span<const double> vector(std::size_t m) const { return vectors.column(m); }
};

Spectrum eigendecompose(const HamiltonianMatrix& h);

inline Spectrum eigendecompose(const EffectiveChain& chain) {
  return eigendecompose(build_hamiltonian(chain));
}

// Tie tolerance used by eigendecompose for a matrix of the given max-norm.
double degeneracy_tolerance(double max_norm) noexcept;

// 1-based site of max |ψ|²; the first one wins on exact ties.
std::size_t localization_center(std::span<const double> psi);

// Two-band dimerized dispersion: bulk bands occupy ±[inner, outer].
struct BandEdges {
  double inner{0.0};  // |t1 − t2|, half the bulk gap
  double outer{0.0};  // t1 + t2, band top

  bool operator==(const BandEdges&) const = default;
};

BandEdges band_edges(double t1, double t2);

// Band edges of a chain read from its first two bond magnitudes (second
// bond taken as zero when the chain has a single bond).
BandEdges chain_band_edges(const EffectiveChain& chain);

}  // namespace sshqed
