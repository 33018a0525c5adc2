#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "itd/baselines.hpp"
#include "itd/ingest.hpp"
#include "itd/pipeline.hpp"

namespace itd {

/// Fully resolved settings for train and compare. One seed feeds the split,
/// SMOTE and the stochastic baselines.
struct RunConfig {
  std::optional<std::string> data_path;
  std::optional<SynthConfig> synth;
  PipelineMode mode = PipelineMode::LeakageSafe;
  std::size_t smote_k = 3;
  double smote_ratio = 1.0;
  double pca_variance = 0.95;
  std::size_t pca_components = 0;  // nonzero selects TopK instead
  double train_fraction = 0.8;
  double z_threshold = 6.0;
  CleanPolicy clean_policy = CleanPolicy::ReportOnly;
  std::uint64_t seed = 7;
  std::string model = "adaboost";
  std::size_t rounds = 50;
  double svm_lambda = 1e-3;
  std::size_t svm_epochs = 20;
  std::size_t mlp_hidden = 16;
  double mlp_learning_rate = 2.0;
  std::size_t mlp_epochs = 1000;
  std::string output_dir = ".";

  /// Throws UsageError unless exactly one data source is set and every
  /// value is in range; creates output_dir, throwing IoError on failure.
  void validate() const;

  PipelineConfig pipeline() const;
  BaselineKind baseline(const std::string& kind) const;

  /// Sorted key=value lines covering every setting that affects results
  /// (output_dir excluded).
  std::vector<std::string> canonical_lines() const;
  /// 16 hex digits of 64-bit FNV-1a over the canonical lines.
  std::string digest() const;
};

/// Applies `key = value` lines; `#` starts a comment. Unknown keys and bad
/// values are UsageErrors naming the line.
void apply_config(RunConfig& config, std::istream& in);
void apply_config_file(RunConfig& config, const std::string& path);

/// Directory named by ITD_OUTPUT_DIR, or "." when unset or empty.
std::string default_output_dir();

std::string fnv1a_hex(const std::string& text);

/// Loads the configured data source.
FeatureTable load_source(const RunConfig& config);

}  // namespace itd
