#include "itd/table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <unordered_set>

#include "itd/error.hpp"

namespace itd {

namespace {

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

std::optional<Day> parse_day(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0, m = 0, d = 0;
  if (!parse_int(text.substr(0, 4), y) || !parse_int(text.substr(5, 2), m) ||
      !parse_int(text.substr(8, 2), d))
    return std::nullopt;
  std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                  std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return Day{ymd};
}

std::string format_day(Day day) {
  const std::chrono::year_month_day ymd{day};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

void FeatureTable::validate() const {
  const std::size_t n = labels.size();
  if (values.rows() != n)
    throw SchemaError("feature table has " + std::to_string(values.rows()) + " value rows but " +
                      std::to_string(n) + " labels");
  if (n > 0 && values.cols() != column_names.size())
    throw SchemaError("feature table has " + std::to_string(values.cols()) +
                      " value columns but " + std::to_string(column_names.size()) + " names");
  if (!row_keys.empty() && row_keys.size() != n)
    throw SchemaError("feature table has " + std::to_string(row_keys.size()) + " row keys for " +
                      std::to_string(n) + " rows");
  std::unordered_set<std::string> seen;
  for (const auto& name : column_names)
    if (!seen.insert(name).second) throw SchemaError("duplicate column name '" + name + "'");
  for (std::size_t r = 0; r < n; ++r) {
    if (labels[r] != 0 && labels[r] != 1)
      throw SchemaError("row " + std::to_string(r) + " has label " + std::to_string(labels[r]) +
                        " (expected 0 or 1)");
    for (std::size_t c = 0; c < values.cols(); ++c)
      if (!std::isfinite(values(r, c)))
        throw SchemaError("row " + std::to_string(r) + " column '" + column_names[c] +
                          "' is not finite");
  }
}

FeatureTable FeatureTable::select_rows(std::span<const std::size_t> indices) const {
  FeatureTable out;
  out.column_names = column_names;
  out.values = values.select_rows(indices);
  out.labels.reserve(indices.size());
  for (auto i : indices) out.labels.push_back(labels[i]);
  if (has_keys()) {
    out.row_keys.reserve(indices.size());
    for (auto i : indices) out.row_keys.push_back(row_keys[i]);
  }
  return out;
}

std::size_t FeatureTable::count_label(int label) const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
}

FeatureTable empty_like(const FeatureTable& like) {
  FeatureTable out;
  out.column_names = like.column_names;
  out.values = Matrix(0, like.cols());
  return out;
}

}  // namespace itd
