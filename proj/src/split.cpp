#include "itd/split.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "itd/error.hpp"
#include "itd/rng.hpp"

namespace itd {

namespace {

std::size_t round_half_up(double x) { return static_cast<std::size_t>(std::floor(x + 0.5)); }

}  // namespace

std::vector<std::size_t> stratified_train_counts(std::span<const std::size_t> class_sizes,
                                                 double train_fraction) {
  std::vector<std::size_t> counts(class_sizes.size());
  std::size_t n = 0, total = 0;
  for (std::size_t c = 0; c < class_sizes.size(); ++c) {
    const std::size_t size = class_sizes[c];
    n += size;
    counts[c] = std::clamp<std::size_t>(round_half_up(train_fraction * static_cast<double>(size)), 1, size - 1);
    total += counts[c];
  }
  const std::size_t want = round_half_up(train_fraction * static_cast<double>(n));
  while (total != want) {
    const bool shrink = total > want;
    std::size_t best = class_sizes.size();
    double best_gap = 0.0;
    for (std::size_t c = 0; c < class_sizes.size(); ++c) {
      const double gap = static_cast<double>(counts[c]) - train_fraction * static_cast<double>(class_sizes[c]);
      const bool movable = shrink ? counts[c] > 1 : counts[c] + 1 < class_sizes[c];
      const double score = shrink ? gap : -gap;
      if (movable && (best == class_sizes.size() || score > best_gap)) {
        best = c;
        best_gap = score;
      }
    }
    if (best == class_sizes.size()) break;
    if (shrink) {
      --counts[best];
      --total;
    } else {
      ++counts[best];
      ++total;
    }
  }
  return counts;
}

SplitIndices stratified_split_indices(std::span<const int> labels, double train_fraction,
                                      std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw ParameterError("train fraction must lie strictly between 0 and 1");
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t r = 0; r < labels.size(); ++r) by_class[labels[r]].push_back(r);

  std::vector<std::size_t> sizes;
  for (const auto& [label, rows] : by_class) {
    if (rows.size() < 2)
      throw ClassError("class " + std::to_string(label) + " has " + std::to_string(rows.size()) +
                       " row(s); stratified splitting needs at least 2 per class");
    sizes.push_back(rows.size());
  }
  const auto counts = stratified_train_counts(sizes, train_fraction);

  Rng rng(seed);
  SplitIndices out;
  std::size_t c = 0;
  for (auto& [label, rows] : by_class) {
    rng.shuffle(std::span<std::size_t>(rows));
    out.train.insert(out.train.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(counts[c]));
    out.test.insert(out.test.end(), rows.begin() + static_cast<std::ptrdiff_t>(counts[c]), rows.end());
    ++c;
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

SplitTables stratified_split(const FeatureTable& table, double train_fraction, std::uint64_t seed) {
  const auto idx = stratified_split_indices(table.labels, train_fraction, seed);
  return {table.select_rows(idx.train), table.select_rows(idx.test)};
}

}  // namespace itd
