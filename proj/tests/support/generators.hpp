// Seeded random inputs for property tests. Every generator is a pure function
// of the engine state, so a fixed seed replays the same cases.

#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "sshqed/eigensolver.hpp"
#include "sshqed/model.hpp"
#include "sshqed/spectra.hpp"

namespace sshqed::testkit {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t uniform_size(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

// Open or periodic chain with bonds in ±[0.1, 2] and a sparse set of
// potentials in [−5, 5].
inline EffectiveChain random_chain(Rng& rng, std::size_t n_min, std::size_t n_max,
                                   bool allow_periodic = true, bool signed_bonds = true) {
  EffectiveChain c;
  c.n_sites = uniform_size(rng, n_min, n_max);
  c.boundary = allow_periodic && c.n_sites >= 3 && coin(rng, 0.3) ? Boundary::periodic
                                                                  : Boundary::open;
  const std::size_t bonds = c.boundary == Boundary::periodic ? c.n_sites : c.n_sites - 1;
  for (std::size_t j = 0; j < bonds; ++j) {
    double t = uniform(rng, 0.1, 2.0);
    if (signed_bonds && coin(rng, 0.2)) t = -t;
    c.hoppings.push_back(t);
  }
  for (std::size_t s = 1; s <= c.n_sites; ++s)
    if (coin(rng, 0.3)) c.potentials[s] = uniform(rng, -5.0, 5.0);
  return c;
}

// Dense symmetric matrix with entries in [−2, 2].
inline DenseMatrix random_symmetric(Rng& rng, std::size_t n) {
  DenseMatrix a(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i <= j; ++i) {
      const double v = uniform(rng, -2.0, 2.0);
      a(i, j) = v;
      a(j, i) = v;
    }
  return a;
}

inline HamiltonianMatrix random_tridiagonal(Rng& rng, std::size_t n, bool with_corner) {
  HamiltonianMatrix h;
  h.n = n;
  for (std::size_t i = 0; i < n; ++i) h.diag.push_back(uniform(rng, -3.0, 3.0));
  for (std::size_t i = 0; i + 1 < n; ++i) h.offdiag.push_back(uniform(rng, -2.0, 2.0));
  if (with_corner) h.corner = uniform(rng, -2.0, 2.0);
  return h;
}

inline PhysicalParams random_physical(Rng& rng, std::size_t n) {
  PhysicalParams p;
  p.n_sites = n;
  p.delta_c = uniform(rng, -3.0, 3.0);
  p.delta_q = uniform(rng, 0.5, 4.0) * (coin(rng) ? 1.0 : -1.0);
  p.delta_Q = -uniform(rng, 0.5, 4.0);
  for (std::size_t i = 0; i < n; ++i) {
    p.G.push_back(uniform(rng, 0.5, 1.5));
    p.g.push_back(uniform(rng, 0.0, 2.0));
  }
  return p;
}

}  // namespace sshqed::testkit
