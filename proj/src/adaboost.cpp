#include "itd/adaboost.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "itd/error.hpp"

namespace itd {

namespace {

constexpr double kTieTolerance = 1e-12;

double sentinel_below(double lowest) { return lowest - std::max(1.0, std::abs(lowest)); }

double midpoint(double a, double b) {
  const double mid = 0.5 * (a + b);
  return mid < b ? mid : a;
}

}  // namespace

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::MaxRounds: return "max-rounds";
    case StopReason::PerfectLearner: return "perfect-learner";
    case StopReason::NoEdge: return "no-edge";
  }
  return "unknown";
}

double weighted_error(const Stump& stump, const Matrix& rows, std::span<const int> labels,
                      std::span<const double> weights) {
  double err = 0.0;
  for (std::size_t i = 0; i < rows.rows(); ++i)
    if (stump.predict(rows.row(i)) != labels[i]) err += weights[i];
  return err;
}

StumpFit fit_stump(const Matrix& rows, std::span<const int> labels, std::span<const double> weights) {
  const std::size_t n = rows.rows();
  const std::size_t d = rows.cols();
  if (n == 0) throw ParameterError("fit_stump needs at least one row");
  if (labels.size() != n || weights.size() != n)
    throw ShapeError("fit_stump: rows, labels and weights differ in length");

  double total = 0.0, negative_mass = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (weights[i] < 0.0) throw ParameterError("fit_stump: negative weight");
    total += weights[i];
    if (labels[i] < 0) negative_mass += weights[i];
  }

  bool have = false;
  StumpFit best;
  auto offer = [&](std::size_t f, double thr, double err_plus) {
    const double err_minus = total - err_plus;
    if (!have || err_plus < best.error - kTieTolerance) {
      best = {Stump{f, thr, 1}, err_plus};
      have = true;
    }
    if (err_minus < best.error - kTieTolerance) best = {Stump{f, thr, -1}, err_minus};
  };

  std::vector<std::size_t> order(n);
  for (std::size_t f = 0; f < d; ++f) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return rows(a, f) < rows(b, f); });
    // Polarity +1 with a threshold below everything predicts +1 for every row.
    double err = negative_mass;
    offer(f, sentinel_below(rows(order[0], f)), err);
    std::size_t i = 0;
    while (i < n) {
      const double v = rows(order[i], f);
      while (i < n && rows(order[i], f) == v) {
        err += labels[order[i]] > 0 ? weights[order[i]] : -weights[order[i]];
        ++i;
      }
      if (i < n) offer(f, midpoint(v, rows(order[i], f)), err);
    }
  }
  best.error = weighted_error(best.stump, rows, labels, weights);
  return best;
}

AdaBoostFit train_adaboost(const Matrix& rows, std::span<const int> labels01,
                           const AdaBoostOptions& options, std::vector<std::string> feature_names) {
  const std::size_t n = rows.rows();
  if (labels01.size() != n) throw ShapeError("train_adaboost: label count differs from row count");
  if (options.max_rounds < 1) throw ParameterError("train_adaboost: max_rounds must be >= 1");
  if (!(options.eps_floor > 0.0 && options.eps_floor < 0.25))
    throw ParameterError("train_adaboost: eps_floor must lie in (0, 0.25)");

  std::vector<int> y(n);
  bool has_pos = false, has_neg = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (labels01[i] != 0 && labels01[i] != 1) throw ClassError("train_adaboost: labels must be 0 or 1");
    y[i] = labels01[i] == 1 ? 1 : -1;
    (y[i] > 0 ? has_pos : has_neg) = true;
  }
  if (!has_pos || !has_neg) throw ClassError("train_adaboost needs both classes present");

  AdaBoostFit fit;
  fit.model.input_dims = rows.cols();
  fit.model.feature_names = std::move(feature_names);
  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  const double lo = options.eps_floor;
  const double hi = 0.5 - options.eps_floor;

  fit.stop = StopReason::MaxRounds;
  for (std::size_t t = 0; t < options.max_rounds; ++t) {
    const StumpFit sf = fit_stump(rows, y, w);
    if (sf.error >= hi) {
      fit.stop = StopReason::NoEdge;
      fit.rejected_epsilon = sf.error;
      break;
    }
    const double e = std::clamp(sf.error, lo, hi);
    const double alpha = 0.5 * std::log((1.0 - e) / e);

    double z = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] *= std::exp(-alpha * y[i] * sf.stump.predict(rows.row(i)));
      z += w[i];
    }
    for (double& wi : w) wi /= z;

    fit.model.learners.push_back({sf.stump, alpha});
    AdaBoostRound round{sf.stump, sf.error, alpha, {}};
    if (options.record_weights) round.weights_after = w;
    fit.trace.push_back(std::move(round));

    if (sf.error <= lo) {
      fit.stop = StopReason::PerfectLearner;
      break;
    }
  }
  return fit;
}

double margin(const AdaBoostModel& model, std::span<const double> row) {
  if (row.size() != model.input_dims)
    throw ShapeError("AdaBoost margin: row has " + std::to_string(row.size()) + " values, model expects " +
                     std::to_string(model.input_dims));
  double s = 0.0;
  for (const auto& l : model.learners) s += l.alpha * l.stump.predict(row);
  return s;
}

int predict(const AdaBoostModel& model, std::span<const double> row) {
  return margin(model, row) > 0.0 ? 1 : 0;
}

}  // namespace itd
