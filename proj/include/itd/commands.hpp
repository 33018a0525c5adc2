#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "itd/ingest.hpp"
#include "itd/metrics.hpp"
#include "itd/model_file.hpp"
#include "itd/run_config.hpp"

namespace itd {

// Each command writes its files and a short summary to `log`. Output paths
// left empty default to a fixed file name inside RunConfig::output_dir (or
// the ITD_OUTPUT_DIR directory for commands without a RunConfig).

struct SynthCommand {
  SynthConfig config;
  std::string out;
};
void run_synth(const SynthCommand& cmd, std::ostream& log);

struct IngestCommand {
  std::vector<std::pair<Channel, std::string>> logs;
  std::string insiders;  // optional label file
  std::string out;
};
void run_ingest(const IngestCommand& cmd, std::ostream& log);

struct TrainCommand {
  RunConfig config;
  std::string out_model;
  std::string out_report;
  std::string out_test;  // raw held-out rows for evaluate
  std::string timestamp = "0";
};

struct TrainResult {
  ModelFile model;
  std::string model_path;
  std::string report_path;
  std::string test_path;
};
TrainResult run_train(const TrainCommand& cmd, std::ostream& log);

struct EvaluateCommand {
  std::string model;
  std::string data;
  std::string out_report;
  std::string roc_csv;
};

struct Evaluation {
  ConfusionMatrix confusion;
  MetricSet metrics;
  RocCurve roc;
};
Evaluation run_evaluate(const EvaluateCommand& cmd, std::ostream& log);

struct CompareCommand {
  RunConfig config;
  std::string out_table;
};

struct CompareRow {
  std::string model;
  double accuracy = 0.0;  // fraction
  double auc = 0.0;
};
/// Rows in the order gaussian-nb, linear-svm, mlp, adaboost.
std::vector<CompareRow> run_compare(const CompareCommand& cmd, std::ostream& log);

struct ScoreCommand {
  std::string model;
  std::string data;
  std::string out;
};
void run_score(const ScoreCommand& cmd, std::ostream& log);

/// Joins `dir` and `name` unless `path` is already set.
std::string resolve_output(const std::string& path, const std::string& dir, const std::string& name);

}  // namespace itd
