#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "itd/clean.hpp"
#include "itd/normalize.hpp"
#include "itd/pca.hpp"
#include "itd/smote.hpp"
#include "itd/table.hpp"

namespace itd {

/// PaperOrder runs clean -> SMOTE -> normalize -> PCA -> split on the whole
/// table, so oversampling and scaling see the rows that later become the test
/// set. LeakageSafe runs clean -> split and fits normalize, SMOTE and PCA on
/// the training rows only.
enum class PipelineMode { PaperOrder, LeakageSafe };

std::string_view to_string(PipelineMode mode);
PipelineMode parse_pipeline_mode(std::string_view text);  // "paper" | "safe"

struct PipelineConfig {
  PipelineMode mode = PipelineMode::LeakageSafe;
  SmoteConfig smote;
  PcaSelector pca = VarianceFraction{0.95};
  double train_fraction = 0.8;
  std::uint64_t split_seed = 7;
  double z_threshold = 6.0;
  CleanPolicy clean_policy = CleanPolicy::ReportOnly;
};

struct PreparedData {
  FeatureTable train;  // normalized and projected, columns pc1..pck
  FeatureTable test;
  FeatureTable raw_test;   // test rows in input feature space
  FeatureTable raw_train;  // training rows in input space (PaperOrder: includes SMOTE rows)
  NormParams norm;
  PcaModel pca;
  CleanReport clean;
  std::size_t smote_added = 0;
  std::vector<std::string> stages;
};

PreparedData run_pipeline(const FeatureTable& table, const PipelineConfig& config);

/// Applies fitted normalization then projection; keys and labels carry over.
FeatureTable transform(const NormParams& norm, const PcaModel& pca, const FeatureTable& table);

}  // namespace itd
