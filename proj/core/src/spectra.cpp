#include "sshqed/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sshqed {

double HamiltonianMatrix::max_norm() const {
  double m = 0.0;
  for (double x : diag) m = std::max(m, std::abs(x));
  for (double x : offdiag) m = std::max(m, std::abs(x));
  if (corner) {
    // With two sites the corner lands on the same entry as the single bond.
    const double c = n == 2 ? offdiag[0] + *corner : *corner;
    m = std::max(m, std::abs(c));
  }
  return m;
}

DenseMatrix HamiltonianMatrix::to_dense() const {
  DenseMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = diag[i];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    a(i, i + 1) = offdiag[i];
    a(i + 1, i) = offdiag[i];
  }
  if (corner && n > 1) {
    a(0, n - 1) += *corner;
    a(n - 1, 0) += *corner;
  }
  return a;
}

std::vector<double> HamiltonianMatrix::apply(std::span<const double> x) const {
  if (x.size() != n) throw std::invalid_argument("HamiltonianMatrix::apply: size mismatch");
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = diag[i] * x[i];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    y[i] += offdiag[i] * x[i + 1];
    y[i + 1] += offdiag[i] * x[i];
  }
  if (corner && n > 1) {
    y[0] += *corner * x[n - 1];
    y[n - 1] += *corner * x[0];
  }
  return y;
}

HamiltonianMatrix build_hamiltonian(const EffectiveChain& chain) {
  validate(chain);
  HamiltonianMatrix h;
  h.n = chain.n_sites;
  h.diag.assign(h.n, 0.0);
  for (const auto& [site, value] : chain.potentials) h.diag[site - 1] = value;
  h.offdiag.assign(chain.hoppings.begin(), chain.hoppings.begin() + (h.n - 1));
  if (chain.boundary == Boundary::periodic) h.corner = chain.hoppings.back();
  return h;
}

double degeneracy_tolerance(double max_norm) noexcept {
  return 1e-11 * std::max(1.0, max_norm);
}

std::size_t localization_center(std::span<const double> psi) {
  std::size_t best = 0;
  double best_w = -1.0;
  for (std::size_t j = 0; j < psi.size(); ++j) {
    const double w = psi[j] * psi[j];
    if (w > best_w) {
      best_w = w;
      best = j;
    }
  }
  return best + 1;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void fix_sign(std::span<double> v) {
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  const double threshold = 1e-8 * vmax;
  for (double x : v) {
    if (std::abs(x) > threshold) {
      if (x < 0.0)
        for (double& y : v) y = -y;
      return;
    }
  }
}

// Rotate a degenerate cluster [first, last) onto eigenvectors of the projected
// position operator, which localizes states living on disjoint regions.
void localize_cluster(const HamiltonianMatrix& h, std::vector<double>& energies,
                      DenseMatrix& vectors, std::size_t first, std::size_t last) {
  const std::size_t k = last - first;
  const std::size_t n = vectors.size();
  DenseMatrix x(k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b <= a; ++b) {
      const auto va = vectors.column(first + a);
      const auto vb = vectors.column(first + b);
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += static_cast<double>(j + 1) * va[j] * vb[j];
      x(a, b) = s;
      x(b, a) = s;
    }
  }
  const EigenPairs rot = jacobi_symmetric(x);

  DenseMatrix rotated(k == 0 ? 0 : n);
  std::vector<std::vector<double>> cols(k, std::vector<double>(n, 0.0));
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t a = 0; a < k; ++a) {
      const double coeff = rot.vectors(a, c);
      const auto va = vectors.column(first + a);
      for (std::size_t j = 0; j < n; ++j) cols[c][j] += coeff * va[j];
    }
  }
  for (std::size_t c = 0; c < k; ++c) {
    auto dst = vectors.column(first + c);
    std::copy(cols[c].begin(), cols[c].end(), dst.begin());
    const auto hv = h.apply(dst);
    energies[first + c] = dot(dst, hv);
  }
}

}  // namespace

Spectrum eigendecompose(const HamiltonianMatrix& h) {
  if (h.n == 0) throw std::invalid_argument("eigendecompose: empty matrix");
  if (h.diag.size() != h.n || h.offdiag.size() + 1 != h.n) {
    throw std::invalid_argument("eigendecompose: inconsistent matrix dimensions");
  }

  EigenPairs raw = h.corner ? jacobi_symmetric(h.to_dense()) : tridiagonal_ql(h.diag, h.offdiag);
  const std::size_t n = h.n;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return raw.values[a] < raw.values[b]; });

  Spectrum out;
  out.energies.resize(n);
  out.vectors = DenseMatrix(n);
  for (std::size_t m = 0; m < n; ++m) {
    out.energies[m] = raw.values[order[m]];
    const auto src = raw.vectors.column(order[m]);
    auto dst = out.vectors.column(m);
    std::copy(src.begin(), src.end(), dst.begin());
  }

  const double tie = degeneracy_tolerance(h.max_norm());
  std::size_t first = 0;
  while (first < n) {
    std::size_t last = first + 1;
    while (last < n && out.energies[last] - out.energies[last - 1] <= tie) ++last;
    if (last - first > 1) {
      localize_cluster(h, out.energies, out.vectors, first, last);

      std::vector<std::size_t> local(last - first);
      std::iota(local.begin(), local.end(), first);
      std::vector<std::size_t> centers(n, 0);
      for (std::size_t m : local) centers[m] = localization_center(out.vectors.column(m));
      std::stable_sort(local.begin(), local.end(), [&](std::size_t a, std::size_t b) {
        if (centers[a] != centers[b]) return centers[a] < centers[b];
        return out.energies[a] < out.energies[b];
      });
      std::vector<double> e;
      std::vector<std::vector<double>> v;
      for (std::size_t m : local) {
        e.push_back(out.energies[m]);
        const auto col = out.vectors.column(m);
        v.emplace_back(col.begin(), col.end());
      }
      for (std::size_t i = 0; i < local.size(); ++i) {
        out.energies[first + i] = e[i];
        auto dst = out.vectors.column(first + i);
        std::copy(v[i].begin(), v[i].end(), dst.begin());
      }
    }
    first = last;
  }

  for (std::size_t m = 0; m < n; ++m) fix_sign(out.vectors.column(m));
  return out;
}

BandEdges band_edges(double t1, double t2) {
  if (t1 < 0.0 || t2 < 0.0) throw std::invalid_argument("band_edges: hoppings must be >= 0");
  return {std::abs(t1 - t2), t1 + t2};
}

BandEdges chain_band_edges(const EffectiveChain& chain) {
  const double t1 = chain.hoppings.empty() ? 0.0 : std::abs(chain.hoppings[0]);
  const double t2 = chain.hoppings.size() < 2 ? 0.0 : std::abs(chain.hoppings[1]);
  return band_edges(t1, t2);
}

}  // namespace sshqed
