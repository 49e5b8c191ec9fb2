// eigensolver.hpp: in-house real symmetric eigensolvers.
//
// Two independent routes: implicit-shift QL on a tridiagonal matrix and cyclic
// Jacobi rotations on a dense one. Neither sorts its output.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sshqed {

// Column-major square matrix; column j is contiguous.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  static DenseMatrix identity(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[j * n_ + i]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[j * n_ + i]; }

  std::span<double> column(std::size_t j) { return {data_.data() + j * n_, n_}; }
  std::span<const double> column(std::size_t j) const { return {data_.data() + j * n_, n_}; }

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t n_{0};
  std::vector<double> data_;
};

struct EigenPairs {
  std::vector<double> values;
  DenseMatrix vectors;  // column m pairs with values[m]
};

// diag has n entries, offdiag n−1. Throws NoConvergence when an eigenvalue
// needs more than 50·n QL iterations.
EigenPairs tridiagonal_ql(std::vector<double> diag, std::vector<double> offdiag);

// Dense symmetric input (only read as symmetric). Stops when the off-diagonal
// Frobenius norm drops below 1e−12·‖A‖_F; throws NoConvergence after 50·n sweeps.
EigenPairs jacobi_symmetric(DenseMatrix a);

}  // namespace sshqed
