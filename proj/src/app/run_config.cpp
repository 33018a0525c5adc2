#include "itd/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>

#include "itd/error.hpp"
#include "itd/feature_csv.hpp"
#include "itd/text.hpp"

namespace itd {

namespace {

std::string policy_name(CleanPolicy p) { return p == CleanPolicy::DropRows ? "drop-rows" : "report-only"; }

std::size_t parse_count(const std::string& key, std::string_view v) {
  auto d = parse_double(v);
  if (!d || *d < 0 || *d != std::floor(*d)) throw UsageError(key + " must be a non-negative integer, got '" + std::string(v) + "'");
  return static_cast<std::size_t>(*d);
}

double parse_real(const std::string& key, std::string_view v) {
  auto d = parse_double(v);
  if (!d || !std::isfinite(*d)) throw UsageError(key + " must be a number, got '" + std::string(v) + "'");
  return *d;
}

}  // namespace

void RunConfig::validate() const {
  if (data_path.has_value() == synth.has_value())
    throw UsageError("exactly one data source is required (a data file or a synthetic configuration)");
  if (synth) {
    try {
      synth->validate();
    } catch (const ParameterError& e) {
      throw UsageError(e.what());
    }
  }
  if (model != "adaboost" && model != "gaussian-nb" && model != "linear-svm" && model != "mlp")
    throw UsageError("unknown model '" + model + "' (expected adaboost, gaussian-nb, linear-svm or mlp)");
  if (smote_k < 1) throw UsageError("smote k must be >= 1");
  if (!(smote_ratio > 0.0 && smote_ratio <= 1.0)) throw UsageError("smote ratio must be in (0, 1]");
  if (!(pca_variance > 0.0 && pca_variance <= 1.0)) throw UsageError("pca variance must be in (0, 1]");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw UsageError("train fraction must be in (0, 1)");
  if (!(z_threshold > 0.0)) throw UsageError("z threshold must be > 0");
  if (rounds < 1) throw UsageError("rounds must be >= 1");
  if (!(svm_lambda > 0.0) || svm_epochs < 1) throw UsageError("svm lambda must be > 0 and epochs >= 1");
  if (mlp_hidden < 1 || !(mlp_learning_rate > 0.0) || mlp_epochs < 1)
    throw UsageError("mlp hidden units, learning rate and epochs must be positive");
  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  if (ec || !std::filesystem::is_directory(output_dir))
    throw IoError("output directory '" + output_dir + "' is not usable");
}

PipelineConfig RunConfig::pipeline() const {
  PipelineConfig p;
  p.mode = mode;
  p.smote = SmoteConfig{smote_k, smote_ratio, seed};
  p.pca = pca_components > 0 ? PcaSelector{TopK{pca_components}} : PcaSelector{VarianceFraction{pca_variance}};
  p.train_fraction = train_fraction;
  p.split_seed = seed;
  p.z_threshold = z_threshold;
  p.clean_policy = clean_policy;
  return p;
}

BaselineKind RunConfig::baseline(const std::string& kind) const {
  if (kind == "gaussian-nb") return GaussianNbParams{};
  if (kind == "linear-svm") return LinearSvmParams{svm_lambda, svm_epochs, seed};
  if (kind == "mlp") return MlpParams{mlp_hidden, mlp_learning_rate, mlp_epochs, seed};
  throw UsageError("'" + kind + "' is not a baseline model");
}

std::vector<std::string> RunConfig::canonical_lines() const {
  std::map<std::string, std::string> kv;
  kv["data"] = data_path.value_or("-");
  if (synth) {
    kv["synth.benign"] = std::to_string(synth->n_benign);
    kv["synth.insider"] = std::to_string(synth->n_insider);
    kv["synth.noise_features"] = std::to_string(synth->noise_features);
    kv["synth.separability"] = format_shortest(synth->separability);
    kv["synth.seed"] = std::to_string(synth->seed);
  }
  kv["mode"] = std::string(to_string(mode));
  kv["smote_k"] = std::to_string(smote_k);
  kv["smote_ratio"] = format_shortest(smote_ratio);
  kv["pca_variance"] = format_shortest(pca_variance);
  kv["pca_components"] = std::to_string(pca_components);
  kv["train_fraction"] = format_shortest(train_fraction);
  kv["z_threshold"] = format_shortest(z_threshold);
  kv["clean_policy"] = policy_name(clean_policy);
  kv["seed"] = std::to_string(seed);
  kv["model"] = model;
  kv["rounds"] = std::to_string(rounds);
  kv["svm_lambda"] = format_shortest(svm_lambda);
  kv["svm_epochs"] = std::to_string(svm_epochs);
  kv["mlp_hidden"] = std::to_string(mlp_hidden);
  kv["mlp_learning_rate"] = format_shortest(mlp_learning_rate);
  kv["mlp_epochs"] = std::to_string(mlp_epochs);
  std::vector<std::string> lines;
  for (const auto& [k, v] : kv) lines.push_back(k + "=" + v);
  return lines;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string RunConfig::digest() const {
  std::string all;
  for (const auto& l : canonical_lines()) all += l + "\n";
  return fnv1a_hex(all);
}

void apply_config(RunConfig& c, std::istream& in) {
  auto synth = [&]() -> SynthConfig& {
    if (!c.synth) c.synth = SynthConfig{};
    return *c.synth;
  };
  const std::map<std::string, std::function<void(const std::string&, std::string_view)>> setters{
      {"data", [&](auto&, auto v) { c.data_path = std::string(v); }},
      {"synth.benign", [&](auto& k, auto v) { synth().n_benign = parse_count(k, v); }},
      {"synth.insider", [&](auto& k, auto v) { synth().n_insider = parse_count(k, v); }},
      {"synth.noise_features", [&](auto& k, auto v) { synth().noise_features = parse_count(k, v); }},
      {"synth.separability", [&](auto& k, auto v) { synth().separability = parse_real(k, v); }},
      {"synth.seed", [&](auto& k, auto v) { synth().seed = parse_count(k, v); }},
      {"mode", [&](auto&, auto v) { c.mode = parse_pipeline_mode(v); }},
      {"smote_k", [&](auto& k, auto v) { c.smote_k = parse_count(k, v); }},
      {"smote_ratio", [&](auto& k, auto v) { c.smote_ratio = parse_real(k, v); }},
      {"pca_variance", [&](auto& k, auto v) { c.pca_variance = parse_real(k, v); }},
      {"pca_components", [&](auto& k, auto v) { c.pca_components = parse_count(k, v); }},
      {"train_fraction", [&](auto& k, auto v) { c.train_fraction = parse_real(k, v); }},
      {"z_threshold", [&](auto& k, auto v) { c.z_threshold = parse_real(k, v); }},
      {"clean_policy",
       [&](auto& k, auto v) {
         if (v == "report-only") c.clean_policy = CleanPolicy::ReportOnly;
         else if (v == "drop-rows") c.clean_policy = CleanPolicy::DropRows;
         else throw UsageError(k + " must be report-only or drop-rows");
       }},
      {"seed", [&](auto& k, auto v) { c.seed = parse_count(k, v); }},
      {"model", [&](auto&, auto v) { c.model = std::string(v); }},
      {"rounds", [&](auto& k, auto v) { c.rounds = parse_count(k, v); }},
      {"svm_lambda", [&](auto& k, auto v) { c.svm_lambda = parse_real(k, v); }},
      {"svm_epochs", [&](auto& k, auto v) { c.svm_epochs = parse_count(k, v); }},
      {"mlp_hidden", [&](auto& k, auto v) { c.mlp_hidden = parse_count(k, v); }},
      {"mlp_learning_rate", [&](auto& k, auto v) { c.mlp_learning_rate = parse_real(k, v); }},
      {"mlp_epochs", [&](auto& k, auto v) { c.mlp_epochs = parse_count(k, v); }},
      {"output_dir", [&](auto&, auto v) { c.output_dir = std::string(v); }},
  };
  std::string raw;
  for (std::size_t n = 1; std::getline(in, raw); ++n) {
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw UsageError("config line " + std::to_string(n) + ": expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const auto it = setters.find(key);
    if (it == setters.end()) throw UsageError("config line " + std::to_string(n) + ": unknown key '" + key + "'");
    try {
      it->second(key, trim(line.substr(eq + 1)));
    } catch (const UsageError& e) {
      throw UsageError("config line " + std::to_string(n) + ": " + e.what());
    }
  }
}

void apply_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  apply_config(config, in);
}

std::string default_output_dir() {
  const char* env = std::getenv("ITD_OUTPUT_DIR");
  return env && *env ? std::string(env) : std::string(".");
}

FeatureTable load_source(const RunConfig& config) {
  config.validate();
  if (config.data_path) return read_feature_csv_file(*config.data_path);
  return generate_synthetic(*config.synth);
}

}  // namespace itd
