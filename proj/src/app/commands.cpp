#include "itd/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "itd/error.hpp"
#include "itd/feature_csv.hpp"
#include "itd/text.hpp"
#include "json.hpp"

namespace itd {

namespace {

using json = nlohmann::ordered_json;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::string percent(double fraction) { return format_fixed(100.0 * fraction, 1) + "%"; }

std::string class_counts(const FeatureTable& t) {
  return std::to_string(t.rows()) + " rows (benign " + std::to_string(t.count_label(0)) + ", insider " +
         std::to_string(t.count_label(1)) + ")";
}

json config_json(const std::vector<std::string>& lines) {
  json j = json::object();
  for (const auto& l : lines) {
    const auto eq = l.find('=');
    j[l.substr(0, eq)] = eq == std::string::npos ? "" : l.substr(eq + 1);
  }
  return j;
}

json clean_json(const CleanReport& r) {
  return {{"missing_cells", r.n_missing_cells},
          {"duplicate_rows", r.n_duplicate_rows},
          {"outlier_cells", r.n_outlier_cells},
          {"inconsistent_rows", r.n_inconsistent_rows},
          {"rows_removed", r.actions_taken.size()}};
}

std::string machine_section(const json& j) { return "\n[machine-readable]\n" + j.dump(2) + "\n"; }

std::string mode_disclaimer(const std::string& mode) {
  if (mode == "paper")
    return "Preprocessing ran in paper order: SMOTE, normalization and PCA were fitted before the split, so "
           "held-out rows (and synthetic neighbours of them) shaped the model. These metrics are optimistic.";
  return "Preprocessing ran leakage-safe: normalization, SMOTE and PCA were fitted on training rows only.";
}

ClassifierModel to_classifier(BaselineModel m) {
  return std::visit([](auto&& x) -> ClassifierModel { return std::move(x); }, std::move(m));
}

struct TrainedClassifier {
  ClassifierModel model;
  json detail;
  std::string text;
};

TrainedClassifier train_classifier(const RunConfig& c, const std::string& kind, const FeatureTable& train) {
  TrainedClassifier out;
  std::ostringstream text;
  if (kind == "adaboost") {
    AdaBoostOptions opt;
    opt.max_rounds = c.rounds;
    auto fit = train_adaboost(train.values, train.labels, opt, train.column_names);
    json trace = json::array();
    text << "adaboost: " << fit.model.rounds() << " rounds, stop: " << to_string(fit.stop) << "\n";
    text << "  round  feature  threshold  polarity  epsilon  alpha\n";
    for (std::size_t t = 0; t < fit.trace.size(); ++t) {
      const auto& r = fit.trace[t];
      text << "  " << t + 1 << "  " << train.column_names[r.stump.feature] << "  "
           << format_fixed(r.stump.threshold, 6) << "  " << (r.stump.polarity > 0 ? "+1" : "-1") << "  "
           << format_fixed(r.epsilon, 6) << "  " << format_fixed(r.alpha, 6) << "\n";
      trace.push_back({{"round", t + 1},
                       {"feature", train.column_names[r.stump.feature]},
                       {"threshold", r.stump.threshold},
                       {"polarity", r.stump.polarity},
                       {"epsilon", r.epsilon},
                       {"alpha", r.alpha}});
    }
    if (fit.stop == StopReason::NoEdge)
      text << "  discarded learner error: " << format_fixed(fit.rejected_epsilon, 6) << "\n";
    out.detail = {{"rounds", fit.model.rounds()}, {"stop", to_string(fit.stop)}, {"trace", trace}};
    out.model = std::move(fit.model);
  } else if (kind == "linear-svm") {
    auto params = std::get<LinearSvmParams>(c.baseline(kind));
    auto fit = train_linear_svm(params, train.values, train.labels);
    text << "linear-svm: objective " << format_fixed(fit.objective.front(), 6) << " -> "
         << format_fixed(fit.objective.back(), 6) << " over " << params.epochs << " epochs\n";
    out.detail = {{"objective", fit.objective}};
    out.model = std::move(fit.model);
  } else if (kind == "mlp") {
    auto params = std::get<MlpParams>(c.baseline(kind));
    auto fit = train_mlp(params, train.values, train.labels);
    text << "mlp: loss " << format_fixed(fit.loss.front(), 6) << " -> " << format_fixed(fit.loss.back(), 6)
         << " over " << params.epochs << " epochs\n";
    out.detail = {{"initial_loss", fit.loss.front()}, {"final_loss", fit.loss.back()}};
    out.model = std::move(fit.model);
  } else {
    out.model = to_classifier(train_baseline(c.baseline(kind), train.values, train.labels));
    text << kind << ": fitted per-class means and variances\n";
    out.detail = json::object();
  }
  out.text = text.str();
  return out;
}

std::string stage_text(const std::vector<std::string>& stages) {
  std::string s;
  for (const auto& st : stages) s += (s.empty() ? "" : " -> ") + st;
  return s;
}

}  // namespace

std::string resolve_output(const std::string& path, const std::string& dir, const std::string& name) {
  if (!path.empty()) return path;
  return (std::filesystem::path(dir) / name).string();
}

void run_synth(const SynthCommand& cmd, std::ostream& log) {
  try {
    cmd.config.validate();
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }
  const std::string dir = default_output_dir();
  std::filesystem::create_directories(dir);
  const std::string path = resolve_output(cmd.out, dir, "synthetic.csv");
  const FeatureTable t = generate_synthetic(cmd.config);
  write_feature_csv_file(path, t);
  log << "wrote " << class_counts(t) << " to " << path << "\n";
  log << "family: " << synth_family_description() << "\n";
}

void run_ingest(const IngestCommand& cmd, std::ostream& log) {
  if (cmd.logs.empty()) throw UsageError("ingest needs at least one activity log");
  std::vector<ActivityEvent> events;
  for (const auto& [channel, path] : cmd.logs) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read activity log '" + path + "'");
    ParsedLog parsed = parse_activity_log(in, channel);
    log << path << ": " << parsed.events.size() << " events";
    if (!parsed.errors.empty())
      log << ", " << parsed.errors.size() << " lines skipped (first: line " << parsed.errors.front().line << ", "
          << parsed.errors.front().reason << ")";
    log << "\n";
    events.insert(events.end(), parsed.events.begin(), parsed.events.end());
  }
  FeatureTable table = aggregate_daily_features(events);
  if (!cmd.insiders.empty()) {
    std::ifstream in(cmd.insiders);
    if (!in) throw IoError("cannot read insider list '" + cmd.insiders + "'");
    LabelJoin joined = join_labels(std::move(table), read_insider_keys(in));
    for (const auto& w : joined.warnings) log << "warning: " << w << "\n";
    table = std::move(joined.table);
  }
  const std::string dir = default_output_dir();
  std::filesystem::create_directories(dir);
  const std::string path = resolve_output(cmd.out, dir, "features.csv");
  write_feature_csv_file(path, table);
  log << "wrote " << class_counts(table) << " to " << path << "\n";
}

TrainResult run_train(const TrainCommand& cmd, std::ostream& log) {
  const RunConfig& c = cmd.config;
  const FeatureTable table = load_source(c);
  const PreparedData p = run_pipeline(table, c.pipeline());
  TrainedClassifier trained = train_classifier(c, c.model, p.train);

  TrainResult result;
  result.model.feature_names = table.column_names;
  result.model.norm = p.norm;
  result.model.pca = p.pca;
  result.model.classifier = std::move(trained.model);
  result.model.meta = {c.seed, std::string(to_string(c.mode)), c.digest(), cmd.timestamp, c.canonical_lines()};
  result.model_path = resolve_output(cmd.out_model, c.output_dir, "model.itd");
  result.report_path = resolve_output(cmd.out_report, c.output_dir, "train_report.txt");
  result.test_path = resolve_output(cmd.out_test, c.output_dir, "heldout.csv");

  save_model_file(result.model_path, result.model);
  write_feature_csv_file(result.test_path, p.raw_test);

  std::ostringstream text;
  text << "itd training report\n";
  text << "model: " << c.model << "\n";
  text << "mode: " << to_string(c.mode) << "\n";
  text << "stages: " << stage_text(p.stages) << "\n";
  text << "config digest: " << c.digest() << "\n";
  for (const auto& l : c.canonical_lines()) text << "  " << l << "\n";
  text << p.clean.to_text();
  text << "input: " << class_counts(table) << "\n";
  text << "smote rows added: " << p.smote_added << "\n";
  text << "train: " << class_counts(p.train) << "\n";
  text << "test: " << class_counts(p.test) << "\n";
  text << "pca: " << p.pca.n_components() << " of " << p.pca.input_dims() << " components (" << describe(c.pipeline().pca)
       << ")\n";
  text << trained.text;

  json j;
  j["report"] = "train";
  j["model"] = c.model;
  j["mode"] = to_string(c.mode);
  j["stages"] = p.stages;
  j["config_digest"] = c.digest();
  j["config"] = config_json(c.canonical_lines());
  j["timestamp"] = cmd.timestamp;
  j["clean"] = clean_json(p.clean);
  j["rows"] = {{"input", table.rows()},
               {"smote_added", p.smote_added},
               {"train", p.train.rows()},
               {"train_benign", p.train.count_label(0)},
               {"train_insider", p.train.count_label(1)},
               {"test", p.test.rows()},
               {"test_benign", p.test.count_label(0)},
               {"test_insider", p.test.count_label(1)}};
  j["pca"] = {{"components", p.pca.n_components()}, {"explained_variance_ratio", p.pca.explained_variance_ratio}};
  j["classifier"] = trained.detail;
  write_text(result.report_path, text.str() + machine_section(j));

  log << "trained " << c.model << " (" << to_string(c.mode) << " mode) on " << class_counts(p.train) << "\n";
  log << "model: " << result.model_path << "\nreport: " << result.report_path << "\nheld-out rows: "
      << result.test_path << "\n";
  return result;
}

Evaluation run_evaluate(const EvaluateCommand& cmd, std::ostream& log) {
  if (cmd.model.empty() || cmd.data.empty()) throw UsageError("evaluate needs --model and --data");
  const ModelFile model = load_model_file(cmd.model);
  const FeatureTable table = read_feature_csv_file(cmd.data);
  table.validate();
  const Scores s = score_table(model, table);

  Evaluation ev;
  ev.confusion = confusion(s.predictions, table.labels);
  ev.metrics = compute_metrics(ev.confusion);
  const bool both = table.count_label(0) > 0 && table.count_label(1) > 0;
  if (both) ev.roc = roc_curve(s.margins, table.labels);
  else ev.roc.auc = std::nan("");

  const std::string dir = default_output_dir();
  std::filesystem::create_directories(dir);
  const std::string report_path = resolve_output(cmd.out_report, dir, "eval_report.txt");
  const std::string roc_path = resolve_output(cmd.roc_csv, dir, "roc.csv");
  {
    std::ofstream out(roc_path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + roc_path + "'");
    write_roc_csv(out, ev.roc);
  }

  const auto& m = ev.metrics;
  const auto& cm = ev.confusion;
  auto flag = [&](DegenerateFlag f) { return m.flagged(f) ? "  (undefined, reported as 0)" : ""; };
  std::ostringstream text;
  text << "itd evaluation report\n";
  text << "model: " << model.kind() << " (trained in " << model.meta.mode << " mode, seed " << model.meta.seed
       << ")\n";
  text << "config digest: " << model.meta.config_digest << "\n";
  for (const auto& l : model.meta.config) text << "  " << l << "\n";
  text << "data: " << cmd.data << ", " << class_counts(table) << "\n";
  text << "confusion: tp " << cm.tp << "  fp " << cm.fp << "  fn " << cm.fn << "  tn " << cm.tn << "\n";
  text << "accuracy:  " << percent(m.accuracy) << "\n";
  text << "precision: " << percent(m.precision) << flag(kPrecisionUndefined) << "\n";
  text << "recall:    " << percent(m.recall) << flag(kRecallUndefined) << "\n";
  text << "f1:        " << percent(m.f1) << flag(kF1Undefined) << "\n";
  text << "auc:       " << (both ? format_fixed(ev.roc.auc, 2) : std::string("n/a (single class)")) << "\n";
  text << "note: " << mode_disclaimer(model.meta.mode) << "\n";

  json j;
  j["report"] = "evaluate";
  j["model"] = model.kind();
  j["mode"] = model.meta.mode;
  j["config_digest"] = model.meta.config_digest;
  j["config"] = config_json(model.meta.config);
  j["rows"] = table.rows();
  j["confusion"] = {{"tp", cm.tp}, {"fp", cm.fp}, {"fn", cm.fn}, {"tn", cm.tn}};
  j["accuracy"] = m.accuracy;
  j["precision"] = m.precision;
  j["recall"] = m.recall;
  j["f1"] = m.f1;
  j["degenerate"] = {{"precision", m.flagged(kPrecisionUndefined)},
                     {"recall", m.flagged(kRecallUndefined)},
                     {"f1", m.flagged(kF1Undefined)}};
  j["auc"] = both ? json(ev.roc.auc) : json(nullptr);
  write_text(report_path, text.str() + machine_section(j));

  log << "accuracy " << percent(m.accuracy) << ", auc "
      << (both ? format_fixed(ev.roc.auc, 2) : std::string("n/a")) << "\nreport: " << report_path
      << "\nroc: " << roc_path << "\n";
  return ev;
}

std::vector<CompareRow> run_compare(const CompareCommand& cmd, std::ostream& log) {
  const RunConfig& c = cmd.config;
  const FeatureTable table = load_source(c);
  const PreparedData p = run_pipeline(table, c.pipeline());

  std::vector<CompareRow> rows;
  for (const std::string kind : {"gaussian-nb", "linear-svm", "mlp", "adaboost"}) {
    const ClassifierModel model = train_classifier(c, kind, p.train).model;
    std::vector<double> margins;
    std::vector<int> predictions;
    for (std::size_t r = 0; r < p.test.rows(); ++r) {
      margins.push_back(classifier_margin(model, p.test.values.row(r)));
      predictions.push_back(margins.back() > 0.0 ? 1 : 0);
    }
    CompareRow row{kind, compute_metrics(confusion(predictions, p.test.labels)).accuracy, 0.0};
    row.auc = roc_curve(margins, p.test.labels).auc;
    rows.push_back(row);
  }

  std::ostringstream tsv;
  tsv << "# config_digest\t" << c.digest() << "\n";
  tsv << "model\taccuracy_pct\tauc\tproposed\n";
  for (const auto& r : rows)
    tsv << r.model << '\t' << format_fixed(100.0 * r.accuracy, 2) << '\t' << format_fixed(r.auc, 4) << '\t'
        << (r.model == "adaboost" ? "*" : "") << '\n';
  const std::string path = resolve_output(cmd.out_table, c.output_dir, "compare.tsv");
  write_text(path, tsv.str());

  log << "stages: " << stage_text(p.stages) << "; test " << class_counts(p.test) << "\n";
  for (const auto& r : rows)
    log << "  " << r.model << (r.model == "adaboost" ? " *" : "") << "  accuracy " << format_fixed(100.0 * r.accuracy, 2)
        << "%  auc " << format_fixed(r.auc, 4) << "\n";
  log << "table: " << path << "\n";
  return rows;
}

void run_score(const ScoreCommand& cmd, std::ostream& log) {
  if (cmd.model.empty() || cmd.data.empty()) throw UsageError("score needs --model and --data");
  const ModelFile model = load_model_file(cmd.model);
  const FeatureTable table = read_feature_csv_file(cmd.data);
  const Scores s = score_table(model, table);
  std::ostringstream out;
  out << "user,day,margin,prediction\n";
  for (std::size_t r = 0; r < table.rows(); ++r) {
    if (table.has_keys()) out << table.row_keys[r].user << ',' << format_day(table.row_keys[r].day);
    else out << ',';
    out << ',' << format_double(s.margins[r]) << ',' << s.predictions[r] << '\n';
  }
  const std::string dir = default_output_dir();
  std::filesystem::create_directories(dir);
  const std::string path = resolve_output(cmd.out, dir, "scores.csv");
  write_text(path, out.str());
  log << "scored " << table.rows() << " rows to " << path << "\n";
}

}  // namespace itd
