#include "sshqed/eigensolver.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sshqed/errors.hpp"

namespace sshqed {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

namespace {

// Apply the plane rotation (c, s) to columns i and i+1 of z.
inline void rotate_columns(DenseMatrix& z, std::size_t i, double c, double s) {
  auto zi = z.column(i);
  auto zi1 = z.column(i + 1);
  for (std::size_t k = 0; k < zi.size(); ++k) {
    const double f = zi1[k];
    zi1[k] = s * zi[k] + c * f;
    zi[k] = c * zi[k] - s * f;
  }
}

}  // namespace

EigenPairs tridiagonal_ql(std::vector<double> d, std::vector<double> offdiag) {
  const std::size_t n = d.size();
  if (n == 0) return {};
  if (offdiag.size() + 1 != n) {
    throw std::invalid_argument("tridiagonal_ql: offdiag must have n-1 entries");
  }

  std::vector<double> e(n, 0.0);
  std::copy(offdiag.begin(), offdiag.end(), e.begin());
  DenseMatrix z = DenseMatrix::identity(n);

  constexpr double eps = std::numeric_limits<double>::epsilon();
  double anorm = 0.0;
  for (std::size_t i = 0; i < n; ++i) anorm = std::max(anorm, std::abs(d[i]) + std::abs(e[i]));
  // Absolute floor for pairs whose diagonal entries both converge to zero.
  const double floor = eps * eps * anorm;
  const std::size_t max_iter = 50 * n;

  for (std::size_t l = 0; l < n; ++l) {
    std::size_t iter = 0;
    std::size_t m = l;
    for (;;) {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd || std::abs(e[m]) <= floor) break;
      }
      if (m == l) break;
      if (++iter > max_iter) {
        throw NoConvergence("tridiagonal_ql: eigenvalue " + std::to_string(l) +
                            " did not converge within " + std::to_string(max_iter) +
                            " iterations");
      }

      // Wilkinson-type shift from the leading 2x2 block.
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool underflow = false;

      for (std::size_t ii = m; ii-- > l;) {
        const double f = s * e[ii];
        const double b = c * e[ii];
        r = std::hypot(f, g);
        e[ii + 1] = r;
        if (r == 0.0) {
          d[ii + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[ii + 1] - p;
        r = (d[ii] - g) * s + 2.0 * c * b;
        p = s * r;
        d[ii + 1] = g + p;
        g = c * r - b;
        rotate_columns(z, ii, c, s);
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
  return {std::move(d), std::move(z)};
}

EigenPairs jacobi_symmetric(DenseMatrix a) {
  const std::size_t n = a.size();
  if (n == 0) return {};
  DenseMatrix v = DenseMatrix::identity(n);

  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) total += a(i, j) * a(i, j);
  const double tol = 1e-12 * std::sqrt(total);
  const std::size_t max_sweeps = 50 * n;

  auto off_norm = [&] {
    double off = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < j; ++i) off += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(off);
  };

  std::size_t sweep = 0;
  while (off_norm() >= tol) {
    if (++sweep > max_sweeps) {
      throw NoConvergence("jacobi_symmetric: no convergence within " +
                          std::to_string(max_sweeps) + " sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        auto vp = v.column(p);
        auto vq = v.column(q);
        for (std::size_t k = 0; k < n; ++k) {
          const double x = vp[k];
          const double y = vq[k];
          vp[k] = c * x - s * y;
          vq[k] = s * x + c * y;
        }
      }
    }
  }

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i);
  return {std::move(values), std::move(v)};
}

}  // namespace sshqed
