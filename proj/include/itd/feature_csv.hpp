#pragma once

#include <iosfwd>
#include <string>

#include "itd/table.hpp"

namespace itd {

// Canonical feature-table CSV:
//   user,day,<feature...>,insider
// one row per user-day, numbers in shortest round-trip form (integers print
// without a decimal point), label 0/1. Tables without row keys are written
// with empty user and day cells.

void write_feature_csv(std::ostream& out, const FeatureTable& table);

/// Empty cells and `NA`/`nan` read as NaN so the cleaning audit can count
/// them; any other unparsable number is a SchemaError naming the line.
FeatureTable read_feature_csv(std::istream& in);

FeatureTable read_feature_csv_file(const std::string& path);
void write_feature_csv_file(const std::string& path, const FeatureTable& table);

}  // namespace itd
