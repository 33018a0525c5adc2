#include <cmath>
#include <set>

#include "doctest.h"
#include "itd/clean.hpp"
#include "itd/error.hpp"
#include "itd/ingest.hpp"
#include "itd/normalize.hpp"
#include "itd/pipeline.hpp"
#include "itd/smote.hpp"
#include "itd/split.hpp"
#include "test_support.hpp"

using namespace itd;

namespace {

FeatureTable make_table(std::vector<std::vector<double>> rows, std::vector<int> labels,
                        std::vector<std::string> names = {}) {
  FeatureTable t;
  if (names.empty())
    for (std::size_t c = 0; c < (rows.empty() ? 0 : rows[0].size()); ++c) names.push_back("f" + std::to_string(c));
  t.column_names = names;
  t.values = Matrix(0, names.size());
  for (auto& r : rows) t.values.append_row(r);
  t.labels = std::move(labels);
  return t;
}

}  // namespace

// ---------------------------------------------------------------- audit_clean

TEST_CASE("audit_clean drops an exact duplicate row") {
  auto t = make_table({{1, 2}, {3, 4}, {1, 2}, {5, 6}}, {0, 1, 0, 1});
  auto r = audit_clean(t, 6.0, CleanPolicy::DropRows);
  CHECK(r.report.n_duplicate_rows == 1);
  CHECK(r.table.rows() == 3);
  REQUIRE(r.report.actions_taken.size() == 1);
  CHECK(r.report.actions_taken[0].row == 2);
}

TEST_CASE("audit_clean on a clean table reports nothing and passes it through") {
  auto t = make_table({{1, 2}, {3, 4}, {2, 2}, {5, 6}, {4, 3}, {2, 5}}, {0, 1, 0, 1, 0, 1});
  for (auto policy : {CleanPolicy::ReportOnly, CleanPolicy::DropRows}) {
    auto r = audit_clean(t, 6.0, policy);
    INFO(r.report.to_text());
    CHECK(r.report.clean());
    CHECK(r.report.actions_taken.empty());
    CHECK(r.table == t);
  }
}

TEST_CASE("audit_clean flags a gross outlier without touching data in report-only mode") {
  Rng rng(5);
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  for (int i = 0; i < 100; ++i) {
    rows.push_back({rng.normal()});
    labels.push_back(i % 2);
  }
  rows.push_back({1e6});
  labels.push_back(0);
  auto t = make_table(rows, labels);
  auto r = audit_clean(t, 6.0, CleanPolicy::ReportOnly);
  CHECK(r.report.n_outlier_cells >= 1);
  CHECK(r.table == t);
  CHECK(audit_clean(t, 6.0, CleanPolicy::DropRows).table.rows() == 100);
}

TEST_CASE("audit_clean counts missing and inconsistent rows") {
  auto t = make_table({{1, 2}, {NAN, 4}, {-1, 3}, {2.5, 1}, {1, 1}}, {0, 1, 0, 1, 2},
                      {"num_logons", "score"});
  auto r = audit_clean(t, 6.0, CleanPolicy::DropRows);
  CHECK(r.report.n_missing_cells == 1);
  CHECK(r.report.n_inconsistent_rows == 3);  // negative count, fractional count, label 2
  CHECK(r.table.rows() == 1);
  CHECK(r.report.actions_taken.size() == 4);
  CHECK_THROWS_AS(audit_clean(t, 0.0), ParameterError);
}

// ---------------------------------------------------------------- normalizer

TEST_CASE("fit_normalizer records per-column ranges") {
  auto t = make_table({{0, 7}, {5, 7}, {10, 7}}, {0, 0, 1});
  auto p = fit_normalizer(t);
  CHECK(p.min == std::vector<double>{0, 7});
  CHECK(p.max == std::vector<double>{10, 7});
  CHECK_THROWS_AS(fit_normalizer(make_table({}, {}, {"a"})), ParameterError);
}

TEST_CASE("apply_normalizer maps by min-max") {
  auto t = make_table({{0, 7}, {5, 7}, {10, 7}}, {0, 0, 1});
  auto p = fit_normalizer(t);
  auto n = apply_normalizer(p, t);
  CHECK(n.values.column(0) == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(n.values.column(1) == std::vector<double>{0.0, 0.0, 0.0});
  CHECK(normalize_value(15, 0, 10) == 1.5);
  CHECK_THROWS_AS(apply_normalizer(p, make_table({{1}}, {0})), ShapeError);
}

TEST_CASE("normalizing an already normalized table with refitted params is the identity") {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    FeatureTable t;
    t.column_names = {"a", "b", "c"};
    t.values = testing::random_matrix(rng, 30, 3, -50, 80);
    t.labels.assign(30, 0);
    auto once = apply_normalizer(fit_normalizer(t), t);
    auto twice = apply_normalizer(fit_normalizer(once), once);
    for (std::size_t i = 0; i < once.values.data().size(); ++i)
      CHECK(std::abs(once.values.data()[i] - twice.values.data()[i]) <= 1e-12);
  }
}

// ---------------------------------------------------------------- SMOTE

TEST_CASE("SMOTE keeps collinear minority samples on their line") {
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  for (int i = 0; i < 6; ++i) {
    rows.push_back({i * 1.5, i * 1.5});
    labels.push_back(1);
  }
  for (int i = 0; i < 30; ++i) {
    rows.push_back({double(i), 40.0 - i});
    labels.push_back(0);
  }
  auto r = smote_balance(make_table(rows, labels), {3, 1.0, 9});
  CHECK(r.table.count_label(1) == 30);
  for (std::size_t i = 36; i < r.table.rows(); ++i) CHECK(r.table.values(i, 0) == r.table.values(i, 1));
}

TEST_CASE("SMOTE on the imbalanced benchmark adds the exact deficit") {
  auto t = generate_synthetic({4800, 250, 0, 0.8, 7});
  auto r = smote_balance(t, {3, 1.0, 7});
  CHECK(r.provenance.size() == 4550);
  CHECK(r.table.count_label(0) == 4800);
  CHECK(r.table.count_label(1) == 4800);
  CHECK(r.table.row_keys.back().user.rfind("smote:", 0) == 0);
}

TEST_CASE("SMOTE samples stay inside the neighbour segment") {
  auto t = make_table({{0}, {1}, {5}, {6}, {7}, {8}}, {1, 1, 0, 0, 0, 0});
  auto r = smote_balance(t, {1, 1.0, 3});
  CHECK(r.provenance.size() == 2);
  for (std::size_t i = 6; i < r.table.rows(); ++i) {
    CHECK(r.table.values(i, 0) >= 0.0);
    CHECK(r.table.values(i, 0) <= 1.0);
  }
}

TEST_CASE("SMOTE honours target ratio and is seeded") {
  auto t = generate_synthetic({300, 20, 1, 0.5, 2});
  auto half = smote_balance(t, {3, 0.5, 1});
  CHECK(half.table.count_label(1) == 150);
  CHECK(smote_balance(t, {3, 0.5, 1}).table == half.table);
  CHECK_FALSE(smote_balance(t, {3, 0.5, 2}).table == half.table);
  // Ratio already met: nothing added.
  CHECK(smote_balance(t, {3, 0.01, 1}).provenance.empty());
}

TEST_CASE("SMOTE errors") {
  CHECK_THROWS_AS(smote_balance(make_table({{1}, {2}}, {0, 0}), {}), ClassError);
  CHECK_THROWS_AS(smote_balance(make_table({{1}, {2}, {3}, {4}, {5}}, {1, 1, 1, 0, 0}), {3, 1.0, 1}),
                  ParameterError);
}

// ---------------------------------------------------------------- split

TEST_CASE("stratified_split keeps exact class proportions") {
  std::vector<int> labels(1000, 0);
  std::fill(labels.begin() + 500, labels.end(), 1);
  auto idx = stratified_split_indices(labels, 0.8, 3);
  std::size_t train_pos = 0;
  for (auto i : idx.train) train_pos += labels[i];
  CHECK(idx.train.size() == 800);
  CHECK(train_pos == 400);
  CHECK(idx.test.size() == 200);
}

TEST_CASE("stratified_split preserves a 90/10 ratio") {
  std::vector<int> labels(100, 0);
  std::fill(labels.begin() + 90, labels.end(), 1);
  auto idx = stratified_split_indices(labels, 0.8, 17);
  std::size_t test_pos = 0;
  for (auto i : idx.test) test_pos += labels[i];
  CHECK(test_pos == 2);
  auto again = stratified_split_indices(labels, 0.8, 17);
  CHECK(again.train == idx.train);
  CHECK(again.test == idx.test);
}

TEST_CASE("stratified_train_counts repairs the total") {
  const std::size_t sizes[] = {5, 5};
  auto c = stratified_train_counts(sizes, 0.5);  // 3 + 3 rounds to 6, target 5
  CHECK(c[0] + c[1] == 5);
}

TEST_CASE("stratified_split errors") {
  std::vector<int> labels = {0, 0, 0, 1};
  CHECK_THROWS_AS(stratified_split_indices(labels, 0.8, 1), ClassError);
  labels.push_back(1);
  CHECK_THROWS_AS(stratified_split_indices(labels, 1.0, 1), ParameterError);
  CHECK_THROWS_AS(stratified_split_indices(labels, 0.0, 1), ParameterError);
}

// ---------------------------------------------------------------- pipeline

TEST_CASE("paper-order pipeline balances both halves") {
  auto t = generate_synthetic({4800, 250, 0, 0.8, 7});
  PipelineConfig cfg;
  cfg.mode = PipelineMode::PaperOrder;
  auto p = run_pipeline(t, cfg);
  CHECK(p.stages == std::vector<std::string>{"clean", "smote", "normalize", "pca", "split"});
  CHECK(p.train.rows() + p.test.rows() == 2 * 4800);
  CHECK(p.train.count_label(0) == p.train.count_label(1));
  CHECK(p.test.count_label(0) == p.test.count_label(1));
  CHECK(p.raw_test.rows() == p.test.rows());
  // The stored parameters reproduce the model-space test rows from raw rows.
  auto again = transform(p.norm, p.pca, p.raw_test);
  CHECK(again.values == p.test.values);
}

TEST_CASE("leakage-safe pipeline never oversamples the test set") {
  auto t = generate_synthetic({4800, 250, 0, 0.8, 7});
  PipelineConfig cfg;
  cfg.mode = PipelineMode::LeakageSafe;
  auto p = run_pipeline(t, cfg);
  CHECK(p.stages == std::vector<std::string>{"clean", "split", "normalize", "smote", "pca"});
  CHECK(p.test.count_label(0) == 960);
  CHECK(p.test.count_label(1) == 50);
  CHECK(p.train.count_label(0) == 3840);
  CHECK(p.train.count_label(1) == 3840);
  CHECK(p.smote_added == 3840 - 200);
  auto again = transform(p.norm, p.pca, p.raw_test);
  CHECK(again.values == p.test.values);
}
