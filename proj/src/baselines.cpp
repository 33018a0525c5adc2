#include "itd/baselines.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "itd/error.hpp"
#include "itd/rng.hpp"

namespace itd {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

void check_training_set(const char* who, const Matrix& rows, std::span<const int> labels01) {
  if (labels01.size() != rows.rows())
    throw ShapeError(std::string(who) + ": label count differs from row count");
  bool seen[2] = {false, false};
  for (int l : labels01) {
    if (l != 0 && l != 1) throw ClassError(std::string(who) + ": labels must be 0 or 1");
    seen[l] = true;
  }
  if (!seen[0] || !seen[1]) throw ClassError(std::string(who) + " needs both classes present");
}

void check_dims(const char* who, std::size_t expected, std::size_t got) {
  if (expected != got)
    throw ShapeError(std::string(who) + ": row has " + std::to_string(got) + " values, model expects " +
                     std::to_string(expected));
}

}  // namespace

// ---------------------------------------------------------------- naive Bayes

double GaussianNbModel::margin(std::span<const double> row) const {
  check_dims("gaussian-nb", input_dims(), row.size());
  double ll[2];
  for (int c = 0; c < 2; ++c) {
    double s = log_prior[c];
    for (std::size_t j = 0; j < row.size(); ++j) {
      const double diff = row[j] - mean[c][j];
      s -= 0.5 * std::log(2.0 * std::numbers::pi * var[c][j]) + diff * diff / (2.0 * var[c][j]);
    }
    ll[c] = s;
  }
  return ll[1] - ll[0];
}

GaussianNbModel train_gaussian_nb(const Matrix& rows, std::span<const int> labels01) {
  check_training_set("gaussian-nb", rows, labels01);
  const std::size_t n = rows.rows(), d = rows.cols();
  GaussianNbModel m;
  std::size_t count[2] = {0, 0};
  std::vector<double> all_mean(d, 0.0), all_var(d, 0.0);
  for (int c = 0; c < 2; ++c) {
    m.mean[c].assign(d, 0.0);
    m.var[c].assign(d, 0.0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const int c = labels01[i];
    ++count[c];
    for (std::size_t j = 0; j < d; ++j) {
      m.mean[c][j] += rows(i, j);
      all_mean[j] += rows(i, j);
    }
  }
  for (int c = 0; c < 2; ++c)
    for (double& v : m.mean[c]) v /= static_cast<double>(count[c]);
  for (double& v : all_mean) v /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int c = labels01[i];
    for (std::size_t j = 0; j < d; ++j) {
      const double dc = rows(i, j) - m.mean[c][j];
      const double da = rows(i, j) - all_mean[j];
      m.var[c][j] += dc * dc;
      all_var[j] += da * da;
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    const double floor = 1e-9 * (all_var[j] / static_cast<double>(n) + 1e-12);
    for (int c = 0; c < 2; ++c) m.var[c][j] = std::max(m.var[c][j] / static_cast<double>(count[c]), floor);
  }
  for (int c = 0; c < 2; ++c) m.log_prior[c] = std::log(static_cast<double>(count[c]) / static_cast<double>(n));
  return m;
}

// ---------------------------------------------------------------- linear SVM

double LinearSvmModel::margin(std::span<const double> row) const {
  check_dims("linear-svm", input_dims(), row.size());
  return dot(w, row) + b;
}

double svm_objective(const LinearSvmModel& model, double lambda, const Matrix& rows,
                     std::span<const int> labels01) {
  double hinge = 0.0;
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    const double y = labels01[i] == 1 ? 1.0 : -1.0;
    hinge += std::max(0.0, 1.0 - y * model.margin(rows.row(i)));
  }
  const double norm2 = dot(model.w, model.w) + model.b * model.b;
  return 0.5 * lambda * norm2 + hinge / static_cast<double>(rows.rows());
}

LinearSvmFit train_linear_svm(const LinearSvmParams& params, const Matrix& rows,
                              std::span<const int> labels01) {
  check_training_set("linear-svm", rows, labels01);
  if (!(params.lambda > 0.0) || params.epochs < 1)
    throw ParameterError("linear-svm: lambda and epochs must be positive");
  const std::size_t n = rows.rows(), d = rows.cols();
  LinearSvmFit fit;
  fit.model.w.assign(d, 0.0);
  fit.objective.push_back(svm_objective(fit.model, params.lambda, rows, labels01));

  const double radius = 1.0 / std::sqrt(params.lambda);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(params.seed);
  std::size_t t = 0;
  auto& w = fit.model.w;
  double& b = fit.model.b;
  for (std::size_t epoch = 1; epoch <= params.epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t i : order) {
      ++t;
      const double eta = 1.0 / (params.lambda * static_cast<double>(t));
      const double y = labels01[i] == 1 ? 1.0 : -1.0;
      const auto x = rows.row(i);
      const bool violated = y * (dot(w, x) + b) < 1.0;
      const double shrink = 1.0 - eta * params.lambda;
      for (std::size_t j = 0; j < d; ++j) w[j] *= shrink;
      b *= shrink;
      if (violated) {
        for (std::size_t j = 0; j < d; ++j) w[j] += eta * y * x[j];
        b += eta * y;
      }
      const double norm = std::sqrt(dot(w, w) + b * b);
      if (norm > radius) {
        const double s = radius / norm;
        for (double& wj : w) wj *= s;
        b *= s;
      }
    }
    const double obj = svm_objective(fit.model, params.lambda, rows, labels01);
    if (!std::isfinite(obj)) throw NumericalError("linear-svm objective diverged at epoch " + std::to_string(epoch));
    fit.objective.push_back(obj);
  }
  return fit;
}

// ---------------------------------------------------------------- MLP

double MlpModel::output(std::span<const double> row) const {
  check_dims("mlp", input_dims(), row.size());
  double z = b2;
  for (std::size_t h = 0; h < b1.size(); ++h) z += w2[h] * sigmoid(dot(w1.row(h), row) + b1[h]);
  return sigmoid(z);
}

double MlpModel::margin(std::span<const double> row) const { return output(row) - 0.5; }

MlpModel init_mlp(std::size_t inputs, std::size_t hidden, std::uint64_t seed) {
  Rng rng(seed);
  auto draw = [&] { return rng.uniform01() - 0.5; };
  MlpModel m;
  m.w1 = Matrix(hidden, inputs);
  m.b1.resize(hidden);
  m.w2.resize(hidden);
  for (std::size_t h = 0; h < hidden; ++h) {
    for (std::size_t j = 0; j < inputs; ++j) m.w1(h, j) = draw();
    m.b1[h] = draw();
  }
  for (std::size_t h = 0; h < hidden; ++h) m.w2[h] = draw();
  m.b2 = draw();
  return m;
}

double mlp_loss(const MlpModel& model, const Matrix& rows, std::span<const int> labels01) {
  double s = 0.0;
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    const double e = model.output(rows.row(i)) - labels01[i];
    s += e * e;
  }
  return s / static_cast<double>(rows.rows());
}

MlpModel mlp_gradient(const MlpModel& model, const Matrix& rows, std::span<const int> labels01) {
  const std::size_t n = rows.rows(), d = rows.cols(), hidden = model.b1.size();
  MlpModel g;
  g.w1 = Matrix(hidden, d);
  g.b1.assign(hidden, 0.0);
  g.w2.assign(hidden, 0.0);
  std::vector<double> act(hidden);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = rows.row(i);
    double z = model.b2;
    for (std::size_t h = 0; h < hidden; ++h) {
      act[h] = sigmoid(dot(model.w1.row(h), x) + model.b1[h]);
      z += model.w2[h] * act[h];
    }
    const double o = sigmoid(z);
    const double delta_out = 2.0 * (o - labels01[i]) * o * (1.0 - o) / static_cast<double>(n);
    g.b2 += delta_out;
    for (std::size_t h = 0; h < hidden; ++h) {
      g.w2[h] += delta_out * act[h];
      const double delta_h = delta_out * model.w2[h] * act[h] * (1.0 - act[h]);
      g.b1[h] += delta_h;
      auto gw = g.w1.row(h);
      for (std::size_t j = 0; j < d; ++j) gw[j] += delta_h * x[j];
    }
  }
  return g;
}

MlpFit train_mlp(const MlpParams& params, const Matrix& rows, std::span<const int> labels01) {
  check_training_set("mlp", rows, labels01);
  if (params.hidden_units < 1 || !(params.learning_rate > 0.0) || params.epochs < 1)
    throw ParameterError("mlp: hidden units, learning rate and epochs must be positive");
  MlpFit fit;
  fit.model = init_mlp(rows.cols(), params.hidden_units, params.seed);
  fit.loss.push_back(mlp_loss(fit.model, rows, labels01));
  auto& m = fit.model;
  const double lr = params.learning_rate;
  for (std::size_t epoch = 1; epoch <= params.epochs; ++epoch) {
    const MlpModel g = mlp_gradient(m, rows, labels01);
    for (std::size_t h = 0; h < m.b1.size(); ++h) {
      auto w = m.w1.row(h);
      auto gw = g.w1.row(h);
      for (std::size_t j = 0; j < w.size(); ++j) w[j] -= lr * gw[j];
      m.b1[h] -= lr * g.b1[h];
      m.w2[h] -= lr * g.w2[h];
    }
    m.b2 -= lr * g.b2;
    const double loss = mlp_loss(m, rows, labels01);
    if (!std::isfinite(loss)) throw NumericalError("mlp loss diverged at epoch " + std::to_string(epoch));
    fit.loss.push_back(loss);
  }
  return fit;
}

// ---------------------------------------------------------------- dispatch

std::string baseline_tag(const BaselineKind& kind) {
  if (std::holds_alternative<GaussianNbParams>(kind)) return "gaussian-nb";
  if (std::holds_alternative<LinearSvmParams>(kind)) return "linear-svm";
  return "mlp";
}

std::string baseline_tag(const BaselineModel& model) {
  if (std::holds_alternative<GaussianNbModel>(model)) return "gaussian-nb";
  if (std::holds_alternative<LinearSvmModel>(model)) return "linear-svm";
  return "mlp";
}

BaselineModel train_baseline(const BaselineKind& kind, const Matrix& rows, std::span<const int> labels01) {
  if (std::holds_alternative<GaussianNbParams>(kind)) return train_gaussian_nb(rows, labels01);
  if (const auto* p = std::get_if<LinearSvmParams>(&kind)) return train_linear_svm(*p, rows, labels01).model;
  return train_mlp(std::get<MlpParams>(kind), rows, labels01).model;
}

double baseline_margin(const BaselineModel& model, std::span<const double> row) {
  return std::visit([&](const auto& m) { return m.margin(row); }, model);
}

int baseline_predict(const BaselineModel& model, std::span<const double> row) {
  return baseline_margin(model, row) > 0.0 ? 1 : 0;
}

}  // namespace itd
