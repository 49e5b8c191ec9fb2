#include "sshqed/response.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "sshqed/errors.hpp"
#include "sshqed/parallel.hpp"

namespace sshqed {

using cplx = std::complex<double>;

double ResponseProfile::total() const {
  return std::accumulate(photon_numbers.begin(), photon_numbers.end(), 0.0);
}

namespace {

void check_drive(const DriveSpec& drive, std::size_t n) {
  if (!(drive.kappa > 0.0)) throw std::invalid_argument("drive: kappa must be > 0");
  if (drive.site < 1 || drive.site > n) throw BadSite("drive: site outside 1..N");
}

}  // namespace

std::vector<cplx> response_amplitudes(const Spectrum& spectrum, const DriveSpec& drive) {
  const std::size_t n = spectrum.size();
  check_drive(drive, n);
  std::vector<cplx> a(n, cplx{0.0, 0.0});
  const std::size_t s = drive.site - 1;
  for (std::size_t m = 0; m < n; ++m) {
    const auto v = spectrum.vector(m);
    const cplx w = v[s] * drive.amplitude / cplx{drive.omega - spectrum.energies[m], 0.5 * drive.kappa};
    for (std::size_t j = 0; j < n; ++j) a[j] += v[j] * w;
  }
  return a;
}

std::vector<cplx> response_amplitudes_direct(const HamiltonianMatrix& h, const DriveSpec& drive) {
  const std::size_t n = h.n;
  check_drive(drive, n);
  const DenseMatrix hd = h.to_dense();
  // Row-major augmented system.
  std::vector<cplx> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = -hd(i, j);
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] += cplx{drive.omega, 0.5 * drive.kappa};
  std::vector<cplx> b(n, cplx{0.0, 0.0});
  b[drive.site - 1] = drive.amplitude;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m[r * n + col]) > std::abs(m[piv * n + col])) piv = r;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[col * n + j], m[piv * n + j]);
      std::swap(b[col], b[piv]);
    }
    const cplx d = m[col * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const cplx f = m[r * n + col] / d;
      if (f == cplx{0.0, 0.0}) continue;
      for (std::size_t j = col; j < n; ++j) m[r * n + j] -= f * m[col * n + j];
      b[r] -= f * b[col];
    }
  }
  std::vector<cplx> x(n);
  for (std::size_t i = n; i-- > 0;) {
    cplx acc = b[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= m[i * n + j] * x[j];
    x[i] = acc / m[i * n + i];
  }
  return x;
}

ResponseProfile profile_from_amplitudes(std::span<const cplx> amplitudes) {
  ResponseProfile p;
  p.photon_numbers.reserve(amplitudes.size());
  for (const cplx& a : amplitudes) p.photon_numbers.push_back(std::norm(a));
  if (!p.photon_numbers.empty()) {
    const auto it = std::max_element(p.photon_numbers.begin(), p.photon_numbers.end());
    p.peak_site = static_cast<std::size_t>(it - p.photon_numbers.begin()) + 1;
  }
  return p;
}

ResponseProfile steady_state_response(const Spectrum& spectrum, const DriveSpec& drive) {
  const auto a = response_amplitudes(spectrum, drive);
  return profile_from_amplitudes(a);
}

std::vector<ScanPoint> frequency_scan(const Spectrum& spectrum, std::size_t site,
                                      std::span<const double> omega_grid, double amplitude,
                                      double kappa) {
  for (double w : omega_grid)
    if (!std::isfinite(w)) throw std::invalid_argument("frequency_scan: non-finite frequency");
  std::vector<ScanPoint> out(omega_grid.size());
  parallel_for(omega_grid.size(), [&](std::size_t i) {
    out[i].omega = omega_grid[i];
    out[i].profile = steady_state_response(spectrum, {site, omega_grid[i], amplitude, kappa});
  });
  return out;
}

std::vector<double> total_response_peaks(std::span<const ScanPoint> scan) {
  std::vector<double> total(scan.size());
  for (std::size_t i = 0; i < scan.size(); ++i) total[i] = scan[i].profile.total();
  std::vector<double> peaks;
  std::size_t i = 0;
  while (i < total.size()) {
    std::size_t j = i;
    while (j + 1 < total.size() && total[j + 1] == total[i]) ++j;
    const bool rises = i == 0 ? false : total[i - 1] < total[i];
    const bool falls = j + 1 == total.size() ? false : total[j + 1] < total[j];
    if (rises && falls) peaks.push_back(scan[i].omega);
    i = j + 1;
  }
  return peaks;
}

}  // namespace sshqed
