#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "itd/table.hpp"

namespace itd {

struct SmoteConfig {
  std::size_t k_neighbors = 3;
  double target_ratio = 1.0;  // minority : majority after balancing
  std::uint64_t seed = 7;
};

/// How one synthetic row was made: row = base + u * (neighbor - base).
/// Row indices refer to the input table.
struct SmoteProvenance {
  std::size_t base_row = 0;
  std::size_t neighbor_row = 0;
  double u = 0.0;
};

struct SmoteResult {
  FeatureTable table;  // input rows first, then the synthetic rows
  std::vector<SmoteProvenance> provenance;  // one per synthetic row, in order
  int minority_label = 1;
};

/// Oversamples the minority class until it holds
/// round(target_ratio * majority) rows. Each synthetic row interpolates a
/// uniformly drawn minority row towards one of its k nearest minority
/// neighbours (Euclidean, ties by lower row index) chosen uniformly, with
/// u uniform in [0, 1]. Synthetic rows carry the key of their base row with
/// the user id prefixed by "smote:".
///
/// Throws ClassError for a single-class table and ParameterError when the
/// minority class has no more than k rows.
SmoteResult smote_balance(const FeatureTable& table, const SmoteConfig& config);

}  // namespace itd
