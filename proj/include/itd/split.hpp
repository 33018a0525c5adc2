#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "itd/table.hpp"

namespace itd {

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

struct SplitTables {
  FeatureTable train;
  FeatureTable test;
};

/// Per-class train counts: round-half-up of fraction * class size, clamped to
/// [1, size - 1], then nudged by one row at a time until the total equals
/// round-half-up of fraction * n. The class with the largest rounding excess
/// (or deficit) moves first; ties go to the lower label.
std::vector<std::size_t> stratified_train_counts(std::span<const std::size_t> class_sizes,
                                                 double train_fraction);

/// Shuffles each class with a seeded generator and sends the leading share
/// to train. Both index lists come back sorted ascending.
///
/// Throws ParameterError for a fraction outside (0, 1) and ClassError when a
/// present class has fewer than 2 rows.
SplitIndices stratified_split_indices(std::span<const int> labels, double train_fraction,
                                      std::uint64_t seed);

SplitTables stratified_split(const FeatureTable& table, double train_fraction, std::uint64_t seed);

}  // namespace itd
