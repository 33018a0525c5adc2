#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "itd/matrix.hpp"

namespace itd {

/// Keep exactly k components.
struct TopK {
  std::size_t k = 1;
};

/// Keep the fewest components whose cumulative explained variance reaches f.
struct VarianceFraction {
  double fraction = 0.95;
};

using PcaSelector = std::variant<TopK, VarianceFraction>;

std::string describe(const PcaSelector& selector);

struct PcaModel {
  std::vector<double> mean;                      // length d
  Matrix components;                             // k x d, orthonormal rows
  std::vector<double> eigenvalues;               // length k, nonincreasing, >= 0
  std::vector<double> explained_variance_ratio;  // length k

  std::size_t input_dims() const noexcept { return mean.size(); }
  std::size_t n_components() const noexcept { return components.rows(); }

  bool operator==(const PcaModel&) const = default;
};

/// Principal axes of the mean-centred, 1/n-normalized covariance of `rows`.
PcaModel fit_pca(const Matrix& rows, const PcaSelector& selector = VarianceFraction{});

/// Each output row is components * (row - mean).
Matrix project(const PcaModel& model, const Matrix& rows);

/// Inverse map mean + components^T * y; exact only for a full basis.
Matrix reconstruct(const PcaModel& model, const Matrix& projected);

}  // namespace itd
