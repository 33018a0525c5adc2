#pragma once

#include <cstddef>
#include <vector>

#include "itd/matrix.hpp"

namespace itd {

/// Square matrix checked symmetric on construction:
/// |a_ij - a_ji| <= 1e-12 * max(1, |a_ij|), all entries finite.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(Matrix entries);  // throws ShapeError / ParameterError

  std::size_t order() const noexcept { return entries_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  const Matrix& matrix() const noexcept { return entries_; }

  double trace() const;
  double frobenius_norm() const;

 private:
  Matrix entries_;
};

/// Mean-centred covariance with 1/n normalization:
/// S = (1/n) * sum_i (x_i - mean)(x_i - mean)^T. Needs n >= 2.
SymMatrix covariance(const Matrix& rows);

std::vector<double> column_means(const Matrix& rows);

struct EigenDecomposition {
  std::vector<double> values;  // nonincreasing
  Matrix vectors;              // row i is the unit eigenvector for values[i]
  int sweeps = 0;
};

/// Cyclic Jacobi eigensolver. Iterates full sweeps of plane rotations until
/// the off-diagonal Frobenius norm falls to tol * ||A||_F.
///
/// Eigenpairs are sorted by value, descending; each eigenvector's
/// largest-magnitude entry is made positive (lowest index wins ties).
/// Throws NumericalError, naming the off-diagonal norm reached, when
/// max_sweeps pass without convergence.
EigenDecomposition sym_eigen(const SymMatrix& a, double tol = 1e-12, int max_sweeps = 100);

/// Flips `v` in place so its largest-magnitude entry is positive.
void canonicalize_sign(std::span<double> v);

}  // namespace itd
