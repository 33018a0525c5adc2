#include "itd/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "itd/error.hpp"
#include "itd/text.hpp"

namespace itd {

ConfusionMatrix confusion(std::span<const int> predictions, std::span<const int> labels) {
  if (predictions.size() != labels.size())
    throw ShapeError("confusion: " + std::to_string(predictions.size()) + " predictions for " +
                     std::to_string(labels.size()) + " labels");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool pred = predictions[i] == 1;
    const bool truth = labels[i] == 1;
    if (pred && truth) ++cm.tp;
    else if (pred) ++cm.fp;
    else if (truth) ++cm.fn;
    else ++cm.tn;
  }
  return cm;
}

MetricSet compute_metrics(const ConfusionMatrix& cm) {
  MetricSet m;
  const auto tp = static_cast<double>(cm.tp), fp = static_cast<double>(cm.fp);
  const auto fn = static_cast<double>(cm.fn), tn = static_cast<double>(cm.tn);
  const double total = tp + fp + fn + tn;
  m.accuracy = total > 0 ? (tp + tn) / total : 0.0;
  if (tp + fp > 0) m.precision = tp / (tp + fp);
  else m.degenerate |= kPrecisionUndefined;
  if (tp + fn > 0) m.recall = tp / (tp + fn);
  else m.degenerate |= kRecallUndefined;
  if (m.precision + m.recall > 0) m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
  else m.degenerate |= kF1Undefined;
  return m;
}

double trapezoid_area(std::span<const RocPoint> points) {
  double area = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i)
    area += (points[i].fpr - points[i - 1].fpr) * (points[i].tpr + points[i - 1].tpr) * 0.5;
  return area;
}

RocCurve roc_curve(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size())
    throw ShapeError("roc_curve: " + std::to_string(scores.size()) + " scores for " +
                     std::to_string(labels.size()) + " labels");
  const auto n_pos = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
  const std::size_t n_neg = labels.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) throw ClassError("roc_curve needs both classes present");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  RocCurve curve;
  curve.points.push_back({0.0, 0.0});
  std::size_t tp = 0, fp = 0, i = 0;
  while (i < order.size()) {
    const double thr = scores[order[i]];
    while (i < order.size() && scores[order[i]] == thr) {
      (labels[order[i]] == 1 ? tp : fp) += 1;
      ++i;
    }
    if (i == order.size()) break;  // the final group is the (1, 1) endpoint
    curve.thresholds.push_back(thr);
    curve.points.push_back({static_cast<double>(fp) / static_cast<double>(n_neg),
                            static_cast<double>(tp) / static_cast<double>(n_pos)});
  }
  curve.points.push_back({1.0, 1.0});
  curve.auc = trapezoid_area(curve.points);
  return curve;
}

void write_roc_csv(std::ostream& out, const RocCurve& curve) {
  out << "fpr,tpr\n";
  for (const auto& p : curve.points) out << format_double(p.fpr) << ',' << format_double(p.tpr) << '\n';
  if (!out) throw IoError("failed writing ROC curve");
}

}  // namespace itd
