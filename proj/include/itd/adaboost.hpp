#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "itd/matrix.hpp"

namespace itd {

/// Depth-1 threshold classifier: +1 when polarity * (x[feature] - threshold) > 0.
struct Stump {
  std::size_t feature = 0;
  double threshold = 0.0;
  int polarity = 1;

  int predict(std::span<const double> row) const {
    return polarity * (row[feature] - threshold) > 0.0 ? 1 : -1;
  }
  bool operator==(const Stump&) const = default;
};

struct StumpFit {
  Stump stump;
  double error = 0.0;
};

/// Sum of weights of the rows the stump misclassifies. Labels are +-1.
double weighted_error(const Stump& stump, const Matrix& rows, std::span<const int> labels,
                      std::span<const double> weights);

/// Exhaustive search for the stump of least weighted error. Candidate
/// thresholds per feature are one sentinel below the minimum plus the
/// midpoints of consecutive distinct values; both polarities are tried.
/// A candidate replaces the incumbent only when its error is lower by more
/// than 1e-12, scanning features ascending, thresholds ascending and +1
/// before -1, so ties keep the earliest candidate.
StumpFit fit_stump(const Matrix& rows, std::span<const int> labels, std::span<const double> weights);

struct WeightedStump {
  Stump stump;
  double alpha = 0.0;

  bool operator==(const WeightedStump&) const = default;
};

/// Ensemble F(x) = sign(sum_t alpha_t h_t(x)); class 1 is +1, class 0 is -1.
struct AdaBoostModel {
  std::vector<WeightedStump> learners;
  std::vector<std::string> feature_names;
  std::size_t input_dims = 0;

  std::size_t rounds() const noexcept { return learners.size(); }
  bool operator==(const AdaBoostModel&) const = default;
};

enum class StopReason { MaxRounds, PerfectLearner, NoEdge };
const char* to_string(StopReason reason);

struct AdaBoostRound {
  Stump stump;
  double epsilon = 0.0;  // weighted error before clamping
  double alpha = 0.0;
  std::vector<double> weights_after;  // filled when AdaBoostOptions::record_weights
};

struct AdaBoostOptions {
  std::size_t max_rounds = 50;
  double eps_floor = 1e-10;
  bool record_weights = false;
};

struct AdaBoostFit {
  AdaBoostModel model;
  std::vector<AdaBoostRound> trace;  // one per stored learner
  StopReason stop = StopReason::MaxRounds;
  double rejected_epsilon = 0.0;  // error of the discarded learner on NoEdge
};

/// Discrete AdaBoost with exponential re-weighting. Each round fits a stump,
/// takes its weighted error e, sets alpha = 0.5 ln((1 - e') / e') with
/// e' = clamp(e, floor, 0.5 - floor), multiplies w_i by
/// exp(-alpha y_i h(x_i)) and renormalizes. Training stops early after a
/// perfect learner (e <= floor, kept) or when no learner beats chance
/// (e >= 0.5 - floor, discarded).
///
/// Throws ClassError unless both labels 0 and 1 occur.
AdaBoostFit train_adaboost(const Matrix& rows, std::span<const int> labels01,
                           const AdaBoostOptions& options = {},
                           std::vector<std::string> feature_names = {});

double margin(const AdaBoostModel& model, std::span<const double> row);
int predict(const AdaBoostModel& model, std::span<const double> row);

}  // namespace itd
