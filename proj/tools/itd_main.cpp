// itd: command-line front end for the insider threat detection toolkit.

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "itd/commands.hpp"
#include "itd/error.hpp"

namespace {

struct RunFlags {
  std::string data;
  std::string config;
  std::string mode;
  std::string model;
  std::size_t rounds = 0;
  double pca_variance = 0.0;
  std::size_t smote_k = 0;
  std::uint64_t seed = 0;
  std::string output_dir;
  CLI::Option* mode_opt = nullptr;
  CLI::Option* model_opt = nullptr;
  CLI::Option* rounds_opt = nullptr;
  CLI::Option* pca_opt = nullptr;
  CLI::Option* smote_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
};

void add_run_flags(CLI::App* cmd, RunFlags& f, bool with_model) {
  cmd->add_option("--data", f.data, "Canonical feature CSV");
  cmd->add_option("--config", f.config, "key = value settings file (flags take precedence)");
  f.mode_opt = cmd->add_option("--mode", f.mode, "Pipeline order: paper or safe (default safe)");
  f.seed_opt = cmd->add_option("--seed", f.seed, "Seed for split, SMOTE and stochastic models (default 7)");
  f.rounds_opt = cmd->add_option("--rounds", f.rounds, "AdaBoost rounds (default 50)");
  f.pca_opt = cmd->add_option("--pca-variance", f.pca_variance, "Retained variance fraction (default 0.95)");
  f.smote_opt = cmd->add_option("--smote-k", f.smote_k, "SMOTE neighbours (default 3)");
  cmd->add_option("--output-dir", f.output_dir, "Directory for default output names (default $ITD_OUTPUT_DIR or .)");
  if (with_model)
    f.model_opt = cmd->add_option("--model", f.model, "adaboost, gaussian-nb, linear-svm or mlp (default adaboost)");
}

itd::RunConfig resolve(const RunFlags& f) {
  itd::RunConfig c;
  c.output_dir = itd::default_output_dir();
  if (!f.config.empty()) itd::apply_config_file(c, f.config);
  if (!f.data.empty()) c.data_path = f.data;
  if (f.mode_opt->count()) c.mode = itd::parse_pipeline_mode(f.mode);
  if (f.seed_opt->count()) c.seed = f.seed;
  if (f.rounds_opt->count()) c.rounds = f.rounds;
  if (f.pca_opt->count()) c.pca_variance = f.pca_variance;
  if (f.smote_opt->count()) c.smote_k = f.smote_k;
  if (f.model_opt && f.model_opt->count()) c.model = f.model;
  if (!f.output_dir.empty()) c.output_dir = f.output_dir;
  c.validate();
  return c;
}

std::string default_timestamp() {
  const char* env = std::getenv("SOURCE_DATE_EPOCH");
  return env && *env ? std::string(env) : std::string("0");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Insider threat detection: synthetic data, preprocessing, AdaBoost and baselines"};
  app.require_subcommand(1);

  itd::SynthCommand synth;
  auto* synth_cmd = app.add_subcommand("synth", "Write a seeded synthetic user-day feature table");
  synth_cmd->add_option("--benign", synth.config.n_benign, "Benign rows (default 4800)");
  synth_cmd->add_option("--insider", synth.config.n_insider, "Insider rows (default 250)");
  synth_cmd->add_option("--noise-features", synth.config.noise_features, "Extra label-independent columns");
  synth_cmd->add_option("--separability", synth.config.separability, "Class separation in [0, 1] (default 0.8)");
  synth_cmd->add_option("--seed", synth.config.seed, "Generator seed (default 7)");
  synth_cmd->add_option("--out", synth.out, "Output CSV (default synthetic.csv)");

  itd::IngestCommand ingest;
  std::string logon, email, file, http;
  auto* ingest_cmd = app.add_subcommand("ingest", "Aggregate raw activity logs into daily feature rows");
  ingest_cmd->add_option("--logon", logon, "Logon log CSV");
  ingest_cmd->add_option("--email", email, "Email log CSV");
  ingest_cmd->add_option("--file", file, "File access log CSV");
  ingest_cmd->add_option("--http", http, "Web visit log CSV");
  ingest_cmd->add_option("--insiders", ingest.insiders, "Insider list: user[,day] per line");
  ingest_cmd->add_option("--out", ingest.out, "Output CSV (default features.csv)");

  RunFlags train_flags;
  itd::TrainCommand train;
  train.timestamp = default_timestamp();
  auto* train_cmd = app.add_subcommand("train", "Run the preprocessing pipeline and fit one classifier");
  add_run_flags(train_cmd, train_flags, true);
  train_cmd->add_option("--out-model", train.out_model, "Model file (default model.itd)");
  train_cmd->add_option("--out-report", train.out_report, "Training report (default train_report.txt)");
  train_cmd->add_option("--out-test", train.out_test, "Raw held-out rows (default heldout.csv)");
  train_cmd->add_option("--timestamp", train.timestamp, "Timestamp recorded in the model (default $SOURCE_DATE_EPOCH or 0)");

  itd::EvaluateCommand evaluate;
  auto* eval_cmd = app.add_subcommand("evaluate", "Score labelled rows and report metrics and ROC");
  eval_cmd->add_option("--model", evaluate.model, "Model file")->required();
  eval_cmd->add_option("--data", evaluate.data, "Canonical feature CSV")->required();
  eval_cmd->add_option("--out-report", evaluate.out_report, "Report (default eval_report.txt)");
  eval_cmd->add_option("--roc-csv", evaluate.roc_csv, "ROC points (default roc.csv)");

  RunFlags compare_flags;
  itd::CompareCommand compare;
  auto* compare_cmd = app.add_subcommand("compare", "Train AdaBoost and the baselines on one shared split");
  add_run_flags(compare_cmd, compare_flags, false);
  compare_cmd->add_option("--out-table", compare.out_table, "Accuracy table TSV (default compare.tsv)");

  itd::ScoreCommand score;
  auto* score_cmd = app.add_subcommand("score", "Write per-row margins and predictions");
  score_cmd->add_option("--model", score.model, "Model file")->required();
  score_cmd->add_option("--data", score.data, "Canonical feature CSV")->required();
  score_cmd->add_option("--out", score.out, "Output CSV (default scores.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : itd::exit_code(itd::ErrorKind::Usage);
  }

  try {
    if (*synth_cmd) {
      itd::run_synth(synth, std::cout);
    } else if (*ingest_cmd) {
      if (!logon.empty()) ingest.logs.emplace_back(itd::Channel::Logon, logon);
      if (!email.empty()) ingest.logs.emplace_back(itd::Channel::Email, email);
      if (!file.empty()) ingest.logs.emplace_back(itd::Channel::FileAccess, file);
      if (!http.empty()) ingest.logs.emplace_back(itd::Channel::WebVisit, http);
      itd::run_ingest(ingest, std::cout);
    } else if (*train_cmd) {
      train.config = resolve(train_flags);
      itd::run_train(train, std::cout);
    } else if (*eval_cmd) {
      itd::run_evaluate(evaluate, std::cout);
    } else if (*compare_cmd) {
      compare.config = resolve(compare_flags);
      itd::run_compare(compare, std::cout);
    } else if (*score_cmd) {
      itd::run_score(score, std::cout);
    }
  } catch (const itd::Error& e) {
    std::cerr << "itd: " << itd::to_string(e.kind()) << ": " << e.what() << "\n";
    return itd::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "itd: internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
