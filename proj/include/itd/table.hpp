#pragma once

#include <chrono>
#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "itd/matrix.hpp"

namespace itd {

/// Calendar day (UTC).
using Day = std::chrono::sys_days;

/// Parses `YYYY-MM-DD`; nullopt when the text is not a valid calendar date.
std::optional<Day> parse_day(std::string_view text);
std::string format_day(Day day);

/// Identifies one user-day record.
struct RowKey {
  std::string user;
  Day day;

  auto operator<=>(const RowKey&) const = default;
  bool operator==(const RowKey&) const = default;
};

/// Labeled numeric matrix: rows are user-day records, columns are named
/// behavioral features. Label 1 marks an insider row.
///
/// The reader and the cleaning audit may hold non-finite cells or labels
/// outside {0, 1} transiently; `validate()` enforces the full invariants and
/// every modelling operation calls it on entry.
struct FeatureTable {
  std::vector<std::string> column_names;
  Matrix values;
  std::vector<int> labels;
  std::vector<RowKey> row_keys;  // empty, or one per row

  std::size_t rows() const noexcept { return labels.size(); }
  std::size_t cols() const noexcept { return column_names.size(); }
  bool has_keys() const noexcept { return !row_keys.empty(); }

  /// Throws SchemaError naming the first violated invariant.
  void validate() const;

  FeatureTable select_rows(std::span<const std::size_t> indices) const;

  std::size_t count_label(int label) const;

  bool operator==(const FeatureTable&) const = default;
};

/// Empty table sharing the column names of `like`.
FeatureTable empty_like(const FeatureTable& like);

}  // namespace itd
