#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "itd/table.hpp"

namespace itd {

enum class CleanPolicy { ReportOnly, DropRows };

struct CleanAction {
  std::size_t row = 0;  // index in the audited input table
  std::string action;   // e.g. "drop: duplicate of row 3"

  bool operator==(const CleanAction&) const = default;
};

struct CleanReport {
  std::size_t n_missing_cells = 0;
  std::size_t n_duplicate_rows = 0;
  std::size_t n_outlier_cells = 0;
  std::size_t n_inconsistent_rows = 0;
  double z_threshold = 6.0;
  CleanPolicy policy = CleanPolicy::ReportOnly;
  std::vector<CleanAction> actions_taken;

  bool clean() const {
    return n_missing_cells == 0 && n_duplicate_rows == 0 && n_outlier_cells == 0 &&
           n_inconsistent_rows == 0;
  }
  std::string to_text() const;
};

struct CleanResult {
  FeatureTable table;
  CleanReport report;
};

/// Audits a table for missing cells (non-finite), exact duplicate records
/// (same key, values and label; first occurrence kept), outlier cells
/// (|z| > z_threshold against the column's population mean and deviation)
/// and format-inconsistent rows (label outside {0,1}, or a negative or
/// fractional value in a `num_*` count column).
///
/// ReportOnly returns the input unchanged. DropRows removes every offending
/// row and records one action per removed row.
CleanResult audit_clean(const FeatureTable& table, double z_threshold = 6.0,
                        CleanPolicy policy = CleanPolicy::ReportOnly);

}  // namespace itd
