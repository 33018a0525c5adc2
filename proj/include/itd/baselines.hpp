#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "itd/matrix.hpp"

namespace itd {

// Comparison classifiers. They are deliberately small reference models, not
// tuned reproductions of any published configuration.

struct GaussianNbParams {};

struct LinearSvmParams {
  double lambda = 1e-3;
  std::size_t epochs = 20;
  std::uint64_t seed = 7;
};

struct MlpParams {
  std::size_t hidden_units = 16;
  double learning_rate = 2.0;
  std::size_t epochs = 1000;
  std::uint64_t seed = 7;
};

using BaselineKind = std::variant<GaussianNbParams, LinearSvmParams, MlpParams>;

/// Per-class feature means and variances plus class log-priors.
struct GaussianNbModel {
  std::vector<double> mean[2];
  std::vector<double> var[2];
  double log_prior[2] = {0.0, 0.0};

  /// log P(1 | x) - log P(0 | x).
  double margin(std::span<const double> row) const;
  std::size_t input_dims() const noexcept { return mean[0].size(); }
  bool operator==(const GaussianNbModel&) const = default;
};

/// Score w . x + b.
struct LinearSvmModel {
  std::vector<double> w;
  double b = 0.0;

  double margin(std::span<const double> row) const;
  std::size_t input_dims() const noexcept { return w.size(); }
  bool operator==(const LinearSvmModel&) const = default;
};

/// One sigmoid hidden layer, sigmoid output.
struct MlpModel {
  Matrix w1;               // hidden x d
  std::vector<double> b1;  // hidden
  std::vector<double> w2;  // hidden
  double b2 = 0.0;

  double output(std::span<const double> row) const;
  /// output - 0.5
  double margin(std::span<const double> row) const;
  std::size_t input_dims() const noexcept { return w1.cols(); }
  bool operator==(const MlpModel&) const = default;
};

using BaselineModel = std::variant<GaussianNbModel, LinearSvmModel, MlpModel>;

std::string baseline_tag(const BaselineKind& kind);
std::string baseline_tag(const BaselineModel& model);

/// Labels are 0/1. Throws ClassError unless both occur, and NumericalError
/// naming the epoch if a training loss becomes non-finite.
BaselineModel train_baseline(const BaselineKind& kind, const Matrix& rows, std::span<const int> labels01);

GaussianNbModel train_gaussian_nb(const Matrix& rows, std::span<const int> labels01);

struct LinearSvmFit {
  LinearSvmModel model;
  std::vector<double> objective;  // [0] at w = 0, then after each epoch
};

/// Stochastic subgradient descent on lambda/2 ||(w, b)||^2 + mean hinge loss
/// with step 1 / (lambda t), a projection onto the ball of radius
/// 1/sqrt(lambda), and a seeded shuffle each epoch. The bias is handled as a
/// weight on a constant feature.
LinearSvmFit train_linear_svm(const LinearSvmParams& params, const Matrix& rows, std::span<const int> labels01);
double svm_objective(const LinearSvmModel& model, double lambda, const Matrix& rows, std::span<const int> labels01);

struct MlpFit {
  MlpModel model;
  std::vector<double> loss;  // [0] before training, then after each epoch
};

/// Full-batch gradient descent on mean squared error.
MlpFit train_mlp(const MlpParams& params, const Matrix& rows, std::span<const int> labels01);
MlpModel init_mlp(std::size_t inputs, std::size_t hidden, std::uint64_t seed);
double mlp_loss(const MlpModel& model, const Matrix& rows, std::span<const int> labels01);
/// Gradient of mlp_loss, laid out like the model.
MlpModel mlp_gradient(const MlpModel& model, const Matrix& rows, std::span<const int> labels01);

double baseline_margin(const BaselineModel& model, std::span<const double> row);
int baseline_predict(const BaselineModel& model, std::span<const double> row);

}  // namespace itd
