#include "itd/pipeline.hpp"

#include "itd/error.hpp"
#include "itd/split.hpp"

namespace itd {

std::string_view to_string(PipelineMode mode) {
  return mode == PipelineMode::PaperOrder ? "paper" : "safe";
}

PipelineMode parse_pipeline_mode(std::string_view text) {
  if (text == "paper") return PipelineMode::PaperOrder;
  if (text == "safe") return PipelineMode::LeakageSafe;
  throw UsageError("unknown pipeline mode '" + std::string(text) + "' (expected paper|safe)");
}

FeatureTable transform(const NormParams& norm, const PcaModel& pca, const FeatureTable& table) {
  FeatureTable out;
  out.values = project(pca, apply_normalizer(norm, table.values));
  for (std::size_t i = 0; i < pca.n_components(); ++i) out.column_names.push_back("pc" + std::to_string(i + 1));
  out.labels = table.labels;
  out.row_keys = table.row_keys;
  return out;
}

PreparedData run_pipeline(const FeatureTable& table, const PipelineConfig& config) {
  PreparedData out;
  auto cleaned = audit_clean(table, config.z_threshold, config.clean_policy);
  out.clean = std::move(cleaned.report);
  const FeatureTable& base = cleaned.table;
  base.validate();
  out.stages.push_back("clean");

  if (config.mode == PipelineMode::PaperOrder) {
    auto balanced = smote_balance(base, config.smote);
    out.smote_added = balanced.provenance.size();
    out.stages.push_back("smote");
    out.norm = fit_normalizer(balanced.table);
    out.stages.push_back("normalize");
    out.pca = fit_pca(apply_normalizer(out.norm, balanced.table.values), config.pca);
    out.stages.push_back("pca");
    const FeatureTable model_space = transform(out.norm, out.pca, balanced.table);
    const auto idx = stratified_split_indices(balanced.table.labels, config.train_fraction, config.split_seed);
    out.stages.push_back("split");
    out.train = model_space.select_rows(idx.train);
    out.test = model_space.select_rows(idx.test);
    out.raw_train = balanced.table.select_rows(idx.train);
    out.raw_test = balanced.table.select_rows(idx.test);
    return out;
  }

  const auto idx = stratified_split_indices(base.labels, config.train_fraction, config.split_seed);
  out.stages.push_back("split");
  out.raw_train = base.select_rows(idx.train);
  out.raw_test = base.select_rows(idx.test);
  out.norm = fit_normalizer(out.raw_train);
  out.stages.push_back("normalize");
  auto balanced = smote_balance(apply_normalizer(out.norm, out.raw_train), config.smote);
  out.smote_added = balanced.provenance.size();
  out.stages.push_back("smote");
  out.pca = fit_pca(balanced.table.values, config.pca);
  out.stages.push_back("pca");

  out.train.values = project(out.pca, balanced.table.values);
  for (std::size_t i = 0; i < out.pca.n_components(); ++i)
    out.train.column_names.push_back("pc" + std::to_string(i + 1));
  out.train.labels = balanced.table.labels;
  out.train.row_keys = balanced.table.row_keys;
  out.test = transform(out.norm, out.pca, out.raw_test);
  return out;
}

}  // namespace itd
