#include "itd/smote.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "itd/error.hpp"
#include "itd/rng.hpp"

namespace itd {

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

// k nearest minority neighbours of every minority row, as positions in `minority`.
std::vector<std::vector<std::size_t>> nearest_neighbors(const Matrix& values,
                                                        const std::vector<std::size_t>& minority,
                                                        std::size_t k) {
  const std::size_t m = minority.size();
  std::vector<std::vector<std::size_t>> out(m);
  std::vector<std::pair<double, std::size_t>> cand;
  cand.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    cand.clear();
    const auto xi = values.row(minority[i]);
    for (std::size_t j = 0; j < m; ++j)
      if (j != i) cand.emplace_back(squared_distance(xi, values.row(minority[j])), j);
    std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(k), cand.end());
    out[i].reserve(k);
    for (std::size_t t = 0; t < k; ++t) out[i].push_back(cand[t].second);
  }
  return out;
}

}  // namespace

SmoteResult smote_balance(const FeatureTable& table, const SmoteConfig& config) {
  table.validate();
  if (config.k_neighbors < 1) throw ParameterError("SMOTE k_neighbors must be >= 1");
  if (!(config.target_ratio > 0.0) || !std::isfinite(config.target_ratio))
    throw ParameterError("SMOTE target_ratio must be > 0");

  const std::size_t n_pos = table.count_label(1);
  const std::size_t n_neg = table.rows() - n_pos;
  if (n_pos == 0 || n_neg == 0) throw ClassError("SMOTE needs both classes present");

  SmoteResult result;
  result.minority_label = n_pos <= n_neg ? 1 : 0;
  const std::size_t majority = std::max(n_pos, n_neg);

  std::vector<std::size_t> minority;
  for (std::size_t r = 0; r < table.rows(); ++r)
    if (table.labels[r] == result.minority_label) minority.push_back(r);
  if (minority.size() <= config.k_neighbors)
    throw ParameterError("SMOTE minority class has " + std::to_string(minority.size()) +
                         " rows; needs more than k=" + std::to_string(config.k_neighbors));

  const auto target = static_cast<std::size_t>(std::floor(config.target_ratio * static_cast<double>(majority) + 0.5));
  const std::size_t n_new = target > minority.size() ? target - minority.size() : 0;

  result.table = table;
  if (n_new == 0) return result;

  const auto neighbors = nearest_neighbors(table.values, minority, config.k_neighbors);
  Rng rng(config.seed);
  std::vector<double> row(table.cols());
  result.provenance.reserve(n_new);
  for (std::size_t s = 0; s < n_new; ++s) {
    const std::size_t i = rng.index(minority.size());
    const std::size_t j = neighbors[i][rng.index(config.k_neighbors)];
    const double u = rng.uniform_closed01();
    const auto x = table.values.row(minority[i]);
    const auto x_nn = table.values.row(minority[j]);
    for (std::size_t c = 0; c < row.size(); ++c) row[c] = x[c] + u * (x_nn[c] - x[c]);
    result.table.values.append_row(row);
    result.table.labels.push_back(result.minority_label);
    if (table.has_keys()) {
      const RowKey& base = table.row_keys[minority[i]];
      result.table.row_keys.push_back(RowKey{"smote:" + base.user, base.day});
    }
    result.provenance.push_back({minority[i], minority[j], u});
  }
  return result;
}

}  // namespace itd
