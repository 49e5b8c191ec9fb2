#pragma once

#include <stdexcept>
#include <string>

namespace sshqed {

// Dispersive mapping needs nonzero qubit detunings.
class ZeroDetuning : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class LengthMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A potential or drive refers to a site outside 1..N.
class BadSite : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Raised by the eigensolvers. Signals a numerics bug rather than bad input.
class NoConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotNormalized : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class TrackingLost : public std::runtime_error {
 public:
  TrackingLost(const std::string& what, double phi_lo, double phi_hi)
      : std::runtime_error(what), phi_lo_(phi_lo), phi_hi_(phi_hi) {}

  double phi_lo() const noexcept { return phi_lo_; }
  double phi_hi() const noexcept { return phi_hi_; }

 private:
  double phi_lo_;
  double phi_hi_;
};

// Compute failure inside a sweep, tagged with the grid parameter that failed.
class SweepError : public std::runtime_error {
 public:
  SweepError(const std::string& what, double parameter)
      : std::runtime_error(what), parameter_(parameter) {}

  double parameter() const noexcept { return parameter_; }

 private:
  double parameter_;
};

}  // namespace sshqed
