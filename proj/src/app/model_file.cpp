#include "itd/model_file.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <type_traits>

#include "itd/error.hpp"
#include "itd/text.hpp"

namespace itd {

namespace {

constexpr const char* kMagic = "itd-model";

void put_vector(std::ostream& out, const std::string& key, const std::vector<double>& v) {
  out << key << ' ' << v.size();
  for (double x : v) out << ' ' << format_double(x);
  out << '\n';
}

void put_matrix(std::ostream& out, const std::string& key, const Matrix& m) {
  out << key << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? " " : "") << format_double(m(r, c));
    out << '\n';
  }
}

void put_lines(std::ostream& out, const std::string& key, const std::vector<std::string>& lines) {
  out << key << ' ' << lines.size() << '\n';
  for (const auto& l : lines) out << l << '\n';
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::string line() {
    std::string l;
    if (!std::getline(in_, l)) fail("unexpected end of document");
    ++line_no_;
    if (!l.empty() && l.back() == '\r') l.pop_back();
    return l;
  }

  // Returns the remainder of a line that must start with `key`.
  std::string field(const std::string& key) {
    std::string l = line();
    if (l == key) return {};
    if (l.rfind(key + ' ', 0) != 0) fail("expected '" + key + "'");
    return l.substr(key.size() + 1);
  }

  std::vector<std::string> tokens(const std::string& key) {
    std::istringstream ss(field(key));
    std::vector<std::string> out;
    for (std::string t; ss >> t;) out.push_back(t);
    return out;
  }

  double number(const std::string& token) {
    auto v = parse_double(token);
    if (!v) fail("bad number '" + token + "'");
    return *v;
  }

  std::size_t count(const std::string& token) {
    const double v = number(token);
    if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v))) fail("bad count '" + token + "'");
    return static_cast<std::size_t>(v);
  }

  double scalar(const std::string& key) {
    auto t = tokens(key);
    if (t.size() != 1) fail("'" + key + "' takes one value");
    return number(t[0]);
  }

  std::vector<double> numbers(std::span<const std::string> t) {
    std::vector<double> out;
    for (const auto& s : t) out.push_back(number(s));
    return out;
  }

  std::vector<double> vector(const std::string& key) {
    auto t = tokens(key);
    if (t.empty() || count(t[0]) != t.size() - 1) fail("'" + key + "' length does not match its count");
    return numbers(std::span<const std::string>(t).subspan(1));
  }

  Matrix matrix(const std::string& key) {
    auto t = tokens(key);
    if (t.size() != 2) fail("'" + key + "' needs rows and cols");
    Matrix m(count(t[0]), count(t[1]));
    for (std::size_t r = 0; r < m.rows(); ++r) {
      std::istringstream ss(line());
      std::vector<std::string> row;
      for (std::string s; ss >> s;) row.push_back(s);
      if (row.size() != m.cols()) fail("matrix row has " + std::to_string(row.size()) + " values");
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = number(row[c]);
    }
    return m;
  }

  std::vector<std::string> lines(const std::string& key) {
    auto t = tokens(key);
    if (t.size() != 1) fail("'" + key + "' needs a count");
    std::vector<std::string> out(count(t[0]));
    for (auto& l : out) l = line();
    return out;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw SchemaError("model file line " + std::to_string(line_no_) + ": " + why);
  }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

void save_classifier(std::ostream& out, const AdaBoostModel& m) {
  out << "adaboost.inputs " << m.input_dims << '\n';
  put_lines(out, "adaboost.features", m.feature_names);
  out << "adaboost.learners " << m.learners.size() << '\n';
  for (const auto& l : m.learners)
    out << l.stump.feature << ' ' << format_double(l.stump.threshold) << ' ' << l.stump.polarity << ' '
        << format_double(l.alpha) << '\n';
}

void save_classifier(std::ostream& out, const GaussianNbModel& m) {
  put_vector(out, "nb.log_prior", {m.log_prior[0], m.log_prior[1]});
  for (int c = 0; c < 2; ++c) {
    put_vector(out, "nb.mean" + std::to_string(c), m.mean[c]);
    put_vector(out, "nb.var" + std::to_string(c), m.var[c]);
  }
}

void save_classifier(std::ostream& out, const LinearSvmModel& m) {
  put_vector(out, "svm.w", m.w);
  out << "svm.b " << format_double(m.b) << '\n';
}

void save_classifier(std::ostream& out, const MlpModel& m) {
  put_matrix(out, "mlp.w1", m.w1);
  put_vector(out, "mlp.b1", m.b1);
  put_vector(out, "mlp.w2", m.w2);
  out << "mlp.b2 " << format_double(m.b2) << '\n';
}

ClassifierModel load_classifier(Reader& rd, const std::string& kind) {
  if (kind == "adaboost") {
    AdaBoostModel m;
    m.input_dims = rd.count(rd.field("adaboost.inputs"));
    m.feature_names = rd.lines("adaboost.features");
    const std::size_t t = rd.count(rd.field("adaboost.learners"));
    for (std::size_t i = 0; i < t; ++i) {
      std::istringstream ss(rd.line());
      std::vector<std::string> f;
      for (std::string s; ss >> s;) f.push_back(s);
      if (f.size() != 4) rd.fail("learner needs feature, threshold, polarity and alpha");
      WeightedStump w;
      w.stump.feature = rd.count(f[0]);
      w.stump.threshold = rd.number(f[1]);
      const double pol = rd.number(f[2]);
      if (pol != 1.0 && pol != -1.0) rd.fail("polarity must be 1 or -1");
      w.stump.polarity = static_cast<int>(pol);
      w.alpha = rd.number(f[3]);
      if (w.stump.feature >= m.input_dims) rd.fail("learner feature out of range");
      m.learners.push_back(w);
    }
    return m;
  }
  if (kind == "gaussian-nb") {
    GaussianNbModel m;
    auto prior = rd.vector("nb.log_prior");
    if (prior.size() != 2) rd.fail("nb.log_prior needs two values");
    m.log_prior[0] = prior[0];
    m.log_prior[1] = prior[1];
    for (int c = 0; c < 2; ++c) {
      m.mean[c] = rd.vector("nb.mean" + std::to_string(c));
      m.var[c] = rd.vector("nb.var" + std::to_string(c));
    }
    return m;
  }
  if (kind == "linear-svm") {
    LinearSvmModel m;
    m.w = rd.vector("svm.w");
    m.b = rd.scalar("svm.b");
    return m;
  }
  if (kind == "mlp") {
    MlpModel m;
    m.w1 = rd.matrix("mlp.w1");
    m.b1 = rd.vector("mlp.b1");
    m.w2 = rd.vector("mlp.w2");
    m.b2 = rd.scalar("mlp.b2");
    if (m.b1.size() != m.w1.rows() || m.w2.size() != m.w1.rows()) rd.fail("mlp layer sizes disagree");
    return m;
  }
  rd.fail("unknown model kind '" + kind + "'");
}

std::size_t classifier_inputs(const ClassifierModel& model) {
  return std::visit([](const auto& m) -> std::size_t {
    if constexpr (std::is_same_v<std::decay_t<decltype(m)>, AdaBoostModel>) return m.input_dims;
    else return m.input_dims();
  }, model);
}

}  // namespace

std::string model_kind(const ClassifierModel& model) {
  return std::visit([](const auto& m) -> std::string {
    using T = std::decay_t<decltype(m)>;
    if constexpr (std::is_same_v<T, AdaBoostModel>) return "adaboost";
    else return baseline_tag(BaselineModel{m});
  }, model);
}

void save_model(std::ostream& out, const ModelFile& model) {
  out << kMagic << ' ' << ModelFile::kFormatVersion << '\n';
  out << "kind " << model.kind() << '\n';
  out << "meta.seed " << model.meta.seed << '\n';
  out << "meta.mode " << model.meta.mode << '\n';
  out << "meta.config_digest " << model.meta.config_digest << '\n';
  out << "meta.timestamp " << model.meta.timestamp << '\n';
  put_lines(out, "config", model.meta.config);
  put_lines(out, "features", model.feature_names);
  put_vector(out, "norm.min", model.norm.min);
  put_vector(out, "norm.max", model.norm.max);
  put_vector(out, "pca.mean", model.pca.mean);
  put_matrix(out, "pca.components", model.pca.components);
  put_vector(out, "pca.eigenvalues", model.pca.eigenvalues);
  put_vector(out, "pca.explained", model.pca.explained_variance_ratio);
  std::visit([&](const auto& m) { save_classifier(out, m); }, model.classifier);
  out << "end\n";
}

ModelFile load_model(std::istream& in) {
  Reader rd(in);
  const std::string header = rd.line();
  const std::string prefix = std::string(kMagic) + ' ';
  if (header.rfind(prefix, 0) != 0) rd.fail("not a model file");
  const std::string version = header.substr(prefix.size());
  if (version != std::to_string(ModelFile::kFormatVersion))
    rd.fail("format version " + version + " is not supported (expected " +
            std::to_string(ModelFile::kFormatVersion) + ")");

  ModelFile m;
  const std::string kind = rd.field("kind");
  m.meta.seed = static_cast<std::uint64_t>(std::stoull(rd.field("meta.seed")));
  m.meta.mode = rd.field("meta.mode");
  m.meta.config_digest = rd.field("meta.config_digest");
  m.meta.timestamp = rd.field("meta.timestamp");
  m.meta.config = rd.lines("config");
  m.feature_names = rd.lines("features");
  m.norm.min = rd.vector("norm.min");
  m.norm.max = rd.vector("norm.max");
  m.pca.mean = rd.vector("pca.mean");
  m.pca.components = rd.matrix("pca.components");
  m.pca.eigenvalues = rd.vector("pca.eigenvalues");
  m.pca.explained_variance_ratio = rd.vector("pca.explained");
  m.classifier = load_classifier(rd, kind);
  if (rd.line() != "end") rd.fail("expected 'end'");

  const std::size_t d = m.feature_names.size();
  if (m.norm.min.size() != d || m.norm.max.size() != d || m.pca.mean.size() != d ||
      m.pca.components.cols() != d)
    rd.fail("preprocessing sizes do not match " + std::to_string(d) + " features");
  if (classifier_inputs(m.classifier) != m.pca.n_components())
    rd.fail("classifier expects " + std::to_string(classifier_inputs(m.classifier)) + " inputs, PCA yields " +
            std::to_string(m.pca.n_components()));
  return m;
}

void save_model_file(const std::string& path, const ModelFile& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write model file '" + path + "'");
  save_model(out, model);
  if (!out) throw IoError("failed writing model file '" + path + "'");
}

ModelFile load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read model file '" + path + "'");
  return load_model(in);
}

void check_compatible(const ModelFile& model, const FeatureTable& table) {
  if (table.column_names == model.feature_names) return;
  std::vector<std::string> missing, unexpected;
  for (const auto& n : model.feature_names)
    if (std::find(table.column_names.begin(), table.column_names.end(), n) == table.column_names.end())
      missing.push_back(n);
  for (const auto& n : table.column_names)
    if (std::find(model.feature_names.begin(), model.feature_names.end(), n) == model.feature_names.end())
      unexpected.push_back(n);
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
    return s.empty() ? std::string("none") : s;
  };
  std::string msg = "data columns do not match the model's features; missing: " + join(missing) +
                    "; unexpected: " + join(unexpected);
  if (missing.empty() && unexpected.empty()) msg = "data columns are in a different order than the model's features";
  throw SchemaError(msg);
}

double classifier_margin(const ClassifierModel& model, std::span<const double> row) {
  return std::visit([&](const auto& m) -> double {
    if constexpr (std::is_same_v<std::decay_t<decltype(m)>, AdaBoostModel>) return margin(m, row);
    else return m.margin(row);
  }, model);
}

Scores score_table(const ModelFile& model, const FeatureTable& table) {
  check_compatible(model, table);
  for (std::size_t r = 0; r < table.rows(); ++r)
    for (double v : table.values.row(r))
      if (!std::isfinite(v)) throw SchemaError("row " + std::to_string(r + 1) + " has a missing value");
  const Matrix projected = project(model.pca, apply_normalizer(model.norm, table.values));
  Scores s;
  for (std::size_t r = 0; r < projected.rows(); ++r) {
    const double m = classifier_margin(model.classifier, projected.row(r));
    s.margins.push_back(m);
    s.predictions.push_back(m > 0.0 ? 1 : 0);
  }
  return s;
}

}  // namespace itd
