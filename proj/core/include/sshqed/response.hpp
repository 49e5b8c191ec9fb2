// response.hpp: steady-state photon numbers of the lattice under a coherent
// drive on one resonator, with a uniform linewidth κ.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "sshqed/spectra.hpp"

namespace sshqed {

struct DriveSpec {
  std::size_t site{1};    // driven resonator, 1-based
  double omega{0.0};      // drive frequency in the rotating frame
  double amplitude{1.0};  // Ω
  double kappa{0.05};     // linewidth, > 0
};

struct ResponseProfile {
  std::vector<double> photon_numbers;  // ⟨a_j†a_j⟩, one per site
  std::size_t peak_site{0};            // 1-based argmax

  double total() const;
  bool operator==(const ResponseProfile&) const = default;
};

// a_j = Σ_m v_m(j) v_m(s) Ω / (ω − E_m + iκ/2).
std::vector<std::complex<double>> response_amplitudes(const Spectrum& spectrum,
                                                      const DriveSpec& drive);

// Same amplitudes from (ω − H + iκ/2)·a = Ω·e_s by Gaussian elimination.
std::vector<std::complex<double>> response_amplitudes_direct(const HamiltonianMatrix& h,
                                                             const DriveSpec& drive);

ResponseProfile profile_from_amplitudes(std::span<const std::complex<double>> amplitudes);

ResponseProfile steady_state_response(const Spectrum& spectrum, const DriveSpec& drive);

struct ScanPoint {
  double omega{0.0};
  ResponseProfile profile;
};

std::vector<ScanPoint> frequency_scan(const Spectrum& spectrum, std::size_t site,
                                      std::span<const double> omega_grid, double amplitude,
                                      double kappa);

// Frequencies where the total photon number Σ_j n_j has a strict local maximum
// on the scan grid (plateaus count once, at their first point).
std::vector<double> total_response_peaks(std::span<const ScanPoint> scan);

}  // namespace sshqed
