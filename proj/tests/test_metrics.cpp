#include <cmath>
#include <sstream>

#include "doctest.h"
#include "itd/error.hpp"
#include "itd/metrics.hpp"
#include "test_support.hpp"

using namespace itd;

namespace {

// Fraction of positive-negative pairs ranked correctly, ties counting 1/2.
double mann_whitney(std::span<const double> s, std::span<const int> y) {
  double good = 0, pairs = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j)
      if (y[i] == 1 && y[j] == 0) {
        pairs += 1;
        good += s[i] > s[j] ? 1.0 : (s[i] == s[j] ? 0.5 : 0.0);
      }
  return good / pairs;
}

}  // namespace

TEST_CASE("confusion counts") {
  std::vector<int> y{1, 1, 0, 0};
  CHECK(confusion(y, y) == ConfusionMatrix{2, 0, 0, 2});
  std::vector<int> flipped{0, 0, 1, 1};
  auto cm = confusion(flipped, y);
  CHECK(cm.tp == 0);
  CHECK(cm.tn == 0);
  CHECK(cm.fp + cm.fn == 4);
  std::vector<int> short_pred{1};
  CHECK_THROWS_AS(confusion(short_pred, y), ShapeError);
}

TEST_CASE("confusion reproduces a 490/8/10/492 matrix") {
  std::vector<int> pred, truth;
  auto add = [&](int p, int t, int n) {
    for (int i = 0; i < n; ++i) {
      pred.push_back(p);
      truth.push_back(t);
    }
  };
  add(1, 1, 490);
  add(1, 0, 8);
  add(0, 1, 10);
  add(0, 0, 492);
  CHECK(confusion(pred, truth) == ConfusionMatrix{490, 8, 10, 492});
}

TEST_CASE("metrics from the 490/8/10/492 matrix") {
  auto m = compute_metrics({490, 8, 10, 492});
  CHECK(m.accuracy == doctest::Approx(982.0 / 1000.0).epsilon(1e-15));
  CHECK(m.precision == doctest::Approx(490.0 / 498.0).epsilon(1e-15));
  CHECK(m.recall == doctest::Approx(0.98).epsilon(1e-15));
  CHECK(std::abs(m.accuracy - 0.9820) < 5e-5);
  CHECK(std::abs(m.precision - 0.98394) < 5e-6);
  CHECK(std::abs(m.f1 - 0.98196) < 5e-6);
  CHECK(m.degenerate == 0);
}

TEST_CASE("metrics of a perfect classifier") {
  auto m = compute_metrics({7, 0, 0, 0});
  CHECK(m.accuracy == 1.0);
  CHECK(m.precision == 1.0);
  CHECK(m.recall == 1.0);
  CHECK(m.f1 == 1.0);
}

TEST_CASE("metrics without positive predictions are flagged") {
  auto m = compute_metrics({0, 0, 5, 5});
  CHECK(m.precision == 0.0);
  CHECK(m.flagged(kPrecisionUndefined));
  CHECK(m.recall == 0.0);
  CHECK_FALSE(m.flagged(kRecallUndefined));
  CHECK(m.f1 == 0.0);
  CHECK(m.flagged(kF1Undefined));
  CHECK(m.accuracy == 0.5);
}

TEST_CASE("accuracy times total is the count of correct rows") {
  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    ConfusionMatrix cm{rng.index(50), rng.index(50), rng.index(50), rng.index(50) + 1};
    auto m = compute_metrics(cm);
    CHECK(std::abs(m.accuracy * cm.total() - double(cm.tp + cm.tn)) < 1e-9);
    if (m.precision + m.recall > 0)
      CHECK(std::abs(m.f1 - 2 * m.precision * m.recall / (m.precision + m.recall)) <= 1e-12);
  }
}

TEST_CASE("ROC of perfectly ranked scores") {
  std::vector<double> s{0.9, 0.8, 0.7, 0.2, 0.1};
  std::vector<int> y{1, 1, 1, 0, 0};
  auto roc = roc_curve(s, y);
  CHECK(roc.auc == 1.0);
  bool corner = false;
  for (auto p : roc.points) corner |= p.fpr == 0.0 && p.tpr == 1.0;
  CHECK(corner);
}

TEST_CASE("ROC of constant scores") {
  std::vector<double> s(6, 0.3);
  std::vector<int> y{1, 0, 1, 0, 1, 0};
  auto roc = roc_curve(s, y);
  REQUIRE(roc.points.size() == 2);
  CHECK(roc.auc == 0.5);
}

TEST_CASE("AUC equals the Mann-Whitney statistic") {
  Rng rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> s(10);
    std::vector<int> y(10);
    for (auto& v : s) v = static_cast<double>(rng.index(5));
    for (auto& v : y) v = static_cast<int>(rng.index(2));
    y[0] = 0;
    y[1] = 1;
    auto roc = roc_curve(s, y);
    CHECK(std::abs(roc.auc - mann_whitney(s, y)) <= 1e-12);
    for (std::size_t i = 1; i < roc.points.size(); ++i) {
      CHECK(roc.points[i].fpr >= roc.points[i - 1].fpr);
      CHECK(roc.points[i].tpr >= roc.points[i - 1].tpr);
    }
    // Strictly increasing transform leaves the curve unchanged.
    std::vector<double> t(s);
    for (auto& v : t) v = 2 * v + 1;
    auto roc2 = roc_curve(t, y);
    CHECK(roc2.auc == roc.auc);
    CHECK(roc2.points.size() == roc.points.size());
    // Negated scores with swapped labels give the same area.
    std::vector<double> neg(s);
    std::vector<int> swapped(y);
    for (auto& v : neg) v = -v;
    for (auto& v : swapped) v = 1 - v;
    CHECK(std::abs(roc_curve(neg, swapped).auc - roc.auc) <= 1e-12);
  }
}

TEST_CASE("ROC errors and CSV") {
  std::vector<double> s{0.1, 0.2};
  std::vector<int> y{1, 1};
  CHECK_THROWS_AS(roc_curve(s, y), ClassError);
  y[0] = 0;
  std::ostringstream out;
  write_roc_csv(out, roc_curve(s, y));
  CHECK(out.str() == "fpr,tpr\n0,0\n0,1\n1,1\n");
}
