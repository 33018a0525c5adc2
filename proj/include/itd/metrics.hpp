#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace itd {

/// Class 1 (insider) is the positive class.
struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const noexcept { return tp + fp + fn + tn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

ConfusionMatrix confusion(std::span<const int> predictions, std::span<const int> labels);

/// Which ratios hit a zero denominator and were reported as 0.
enum DegenerateFlag : unsigned {
  kPrecisionUndefined = 1u << 0,
  kRecallUndefined = 1u << 1,
  kF1Undefined = 1u << 2,
};

struct MetricSet {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  unsigned degenerate = 0;  // DegenerateFlag bits

  bool flagged(DegenerateFlag f) const noexcept { return (degenerate & f) != 0; }
};

/// Accuracy, precision, recall and F1; a 0/0 ratio becomes 0.0 plus a flag.
MetricSet compute_metrics(const ConfusionMatrix& cm);

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocCurve {
  std::vector<RocPoint> points;   // (0,0) first, (1,1) last
  std::vector<double> thresholds; // one per interior point, descending
  double auc = 0.0;
};

/// Sweeps the distinct scores from high to low, calling a row positive when
/// score >= threshold; tied scores form one point. AUC is the trapezoid
/// area under the resulting polyline. Throws ClassError unless both labels
/// occur.
RocCurve roc_curve(std::span<const double> scores, std::span<const int> labels);

double trapezoid_area(std::span<const RocPoint> points);

/// `fpr,tpr` header then one line per point, full precision.
void write_roc_csv(std::ostream& out, const RocCurve& curve);

}  // namespace itd
