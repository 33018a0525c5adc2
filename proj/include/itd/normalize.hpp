#pragma once

#include <vector>

#include "itd/table.hpp"

namespace itd {

/// Per-column range recorded by fit_normalizer.
struct NormParams {
  std::vector<double> min;
  std::vector<double> max;

  std::size_t cols() const noexcept { return min.size(); }
  bool operator==(const NormParams&) const = default;
};

NormParams fit_normalizer(const FeatureTable& table);
NormParams fit_normalizer(const Matrix& values);

/// x' = (x - min) / (max - min). Constant columns (min == max) map to 0.
/// Values outside the fitted range are not clipped.
double normalize_value(double x, double lo, double hi);

FeatureTable apply_normalizer(const NormParams& params, const FeatureTable& table);
Matrix apply_normalizer(const NormParams& params, const Matrix& values);

}  // namespace itd
