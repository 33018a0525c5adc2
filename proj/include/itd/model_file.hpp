#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "itd/adaboost.hpp"
#include "itd/baselines.hpp"
#include "itd/normalize.hpp"
#include "itd/pca.hpp"
#include "itd/table.hpp"

namespace itd {

using ClassifierModel = std::variant<AdaBoostModel, GaussianNbModel, LinearSvmModel, MlpModel>;

/// "adaboost", "gaussian-nb", "linear-svm" or "mlp".
std::string model_kind(const ClassifierModel& model);

struct TrainingMeta {
  std::uint64_t seed = 0;
  std::string mode;
  std::string config_digest;
  std::string timestamp = "0";
  std::vector<std::string> config;  // resolved key=value lines

  bool operator==(const TrainingMeta&) const = default;
};

/// Everything needed to score raw feature rows: the fitted normalizer and
/// projection plus the classifier that consumes their output.
struct ModelFile {
  static constexpr int kFormatVersion = 1;

  std::vector<std::string> feature_names;  // raw input columns, in order
  NormParams norm;
  PcaModel pca;
  ClassifierModel classifier;
  TrainingMeta meta;

  std::string kind() const { return model_kind(classifier); }
  bool operator==(const ModelFile&) const = default;
};

/// Line-oriented text, header `itd-model <version>`, numbers with 17
/// significant digits.
void save_model(std::ostream& out, const ModelFile& model);
/// Throws SchemaError on a malformed document or a different format version.
ModelFile load_model(std::istream& in);

void save_model_file(const std::string& path, const ModelFile& model);
ModelFile load_model_file(const std::string& path);

/// Throws SchemaError listing missing and unexpected columns unless the
/// table's columns equal the model's feature names.
void check_compatible(const ModelFile& model, const FeatureTable& table);

double classifier_margin(const ClassifierModel& model, std::span<const double> row);

struct Scores {
  std::vector<double> margins;
  std::vector<int> predictions;  // 1 when margin > 0
};

/// Normalizes, projects and scores every row of a raw table.
Scores score_table(const ModelFile& model, const FeatureTable& table);

}  // namespace itd
