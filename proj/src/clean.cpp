#include "itd/clean.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <tuple>

#include "itd/error.hpp"
#include "itd/text.hpp"

namespace itd {

namespace {

// Total order on cells: NaN sorts after every number and equals NaN.
bool cell_less(double a, double b) {
  const bool na = std::isnan(a), nb = std::isnan(b);
  if (na || nb) return !na && nb;
  return a < b;
}

// Exact-equality ordering for duplicate detection.
struct RecordLess {
  const FeatureTable* t;
  bool operator()(std::size_t a, std::size_t b) const {
    if (t->has_keys() && t->row_keys[a] != t->row_keys[b]) return t->row_keys[a] < t->row_keys[b];
    if (t->labels[a] != t->labels[b]) return t->labels[a] < t->labels[b];
    auto ra = t->values.row(a);
    auto rb = t->values.row(b);
    for (std::size_t c = 0; c < ra.size(); ++c) {
      if (cell_less(ra[c], rb[c])) return true;
      if (cell_less(rb[c], ra[c])) return false;
    }
    return false;
  }
};

bool is_count_column(const std::string& name) { return name.rfind("num_", 0) == 0; }

}  // namespace

std::string CleanReport::to_text() const {
  std::string out;
  out += "cleaning audit (" + std::string(policy == CleanPolicy::DropRows ? "drop-rows" : "report-only") +
         ", z-threshold " + format_double(z_threshold) + ")\n";
  out += "  missing cells:       " + std::to_string(n_missing_cells) + "\n";
  out += "  duplicate rows:      " + std::to_string(n_duplicate_rows) + "\n";
  out += "  outlier cells:       " + std::to_string(n_outlier_cells) + "\n";
  out += "  inconsistent rows:   " + std::to_string(n_inconsistent_rows) + "\n";
  out += "  rows removed:        " + std::to_string(actions_taken.size()) + "\n";
  return out;
}

CleanResult audit_clean(const FeatureTable& table, double z_threshold, CleanPolicy policy) {
  if (!(z_threshold > 0.0)) throw ParameterError("z_threshold must be > 0");
  const std::size_t n = table.rows();
  const std::size_t d = table.cols();

  CleanReport report;
  report.z_threshold = z_threshold;
  report.policy = policy;
  std::vector<std::optional<std::string>> reason(n);
  auto flag = [&](std::size_t r, std::string why) {
    if (!reason[r]) reason[r] = std::move(why);
  };

  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < d; ++c)
      if (!std::isfinite(table.values(r, c))) {
        ++report.n_missing_cells;
        flag(r, "drop: missing value in '" + table.column_names[c] + "'");
      }

  for (std::size_t r = 0; r < n; ++r) {
    bool bad = table.labels[r] != 0 && table.labels[r] != 1;
    for (std::size_t c = 0; c < d && !bad; ++c) {
      const double v = table.values(r, c);
      if (is_count_column(table.column_names[c]) && std::isfinite(v) && (v < 0.0 || v != std::floor(v)))
        bad = true;
    }
    if (bad) {
      ++report.n_inconsistent_rows;
      flag(r, "drop: inconsistent format");
    }
  }

  std::map<std::size_t, std::size_t, RecordLess> first_seen(RecordLess{&table});
  for (std::size_t r = 0; r < n; ++r) {
    auto [it, inserted] = first_seen.emplace(r, r);
    if (!inserted) {
      ++report.n_duplicate_rows;
      flag(r, "drop: duplicate of row " + std::to_string(it->second));
    }
  }

  for (std::size_t c = 0; c < d; ++c) {
    double sum = 0.0;
    std::size_t m = 0;
    for (std::size_t r = 0; r < n; ++r)
      if (std::isfinite(table.values(r, c))) {
        sum += table.values(r, c);
        ++m;
      }
    if (m < 2) continue;
    const double mean = sum / static_cast<double>(m);
    double ss = 0.0;
    for (std::size_t r = 0; r < n; ++r)
      if (std::isfinite(table.values(r, c))) ss += (table.values(r, c) - mean) * (table.values(r, c) - mean);
    const double sd = std::sqrt(ss / static_cast<double>(m));
    if (!(sd > 0.0)) continue;
    for (std::size_t r = 0; r < n; ++r) {
      const double v = table.values(r, c);
      if (std::isfinite(v) && std::abs(v - mean) / sd > z_threshold) {
        ++report.n_outlier_cells;
        flag(r, "drop: outlier in '" + table.column_names[c] + "'");
      }
    }
  }

  if (policy == CleanPolicy::ReportOnly) return {table, std::move(report)};

  std::vector<std::size_t> keep;
  for (std::size_t r = 0; r < n; ++r) {
    if (reason[r]) report.actions_taken.push_back({r, *reason[r]});
    else keep.push_back(r);
  }
  return {table.select_rows(keep), std::move(report)};
}

}  // namespace itd
