#include <cmath>

#include "doctest.h"
#include "itd/adaboost.hpp"
#include "itd/error.hpp"
#include "test_support.hpp"

using namespace itd;

namespace {

// Exhaustive stump search written against the candidate definition only.
StumpFit brute_force_stump(const Matrix& x, std::span<const int> y, std::span<const double> w) {
  StumpFit best;
  bool have = false;
  for (std::size_t f = 0; f < x.cols(); ++f) {
    std::vector<double> v = x.column(f);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    std::vector<double> thresholds{v[0] - std::max(1.0, std::abs(v[0]))};
    for (std::size_t i = 0; i + 1 < v.size(); ++i) thresholds.push_back(0.5 * (v[i] + v[i + 1]));
    for (double t : thresholds)
      for (int pol : {1, -1}) {
        double err = 0;
        for (std::size_t r = 0; r < x.rows(); ++r) {
          const int h = pol * (x(r, f) - t) > 0 ? 1 : -1;
          if (h != y[r]) err += w[r];
        }
        if (!have || err < best.error - 1e-12) {
          best = {Stump{f, t, pol}, err};
          have = true;
        }
      }
  }
  return best;
}

}  // namespace

TEST_CASE("fit_stump on a separable line") {
  Matrix x{{1}, {2}, {3}, {4}};
  std::vector<int> y{-1, -1, 1, 1};
  std::vector<double> w(4, 0.25);
  auto s = fit_stump(x, y, w);
  CHECK(s.stump.threshold == 2.5);
  CHECK(s.stump.polarity == 1);
  CHECK(s.error == 0.0);
}

TEST_CASE("fit_stump with constant labels picks the sentinel on feature 0") {
  Matrix x{{3, 1}, {1, 2}, {2, 0}};
  std::vector<int> y{1, 1, 1};
  std::vector<double> w(3, 1.0 / 3);
  auto s = fit_stump(x, y, w);
  CHECK(s.error == 0.0);
  CHECK(s.stump.feature == 0);
  CHECK(s.stump.polarity == 1);
  CHECK(s.stump.threshold < 1.0);
}

TEST_CASE("fit_stump equals exhaustive search on random instances") {
  Rng rng(808);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix x(8, 3);
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 3; ++j) x(i, j) = static_cast<double>(rng.index(6));  // force ties
    std::vector<int> y(8);
    for (auto& v : y) v = rng.index(2) ? 1 : -1;
    auto w = testing::random_weights(rng, 8);
    auto got = fit_stump(x, y, w);
    auto ref = brute_force_stump(x, y, w);
    CHECK(std::abs(got.error - ref.error) <= 1e-12);
    CHECK(got.stump == ref.stump);
    CHECK(got.error <= 0.5 + 1e-12);
  }
}

TEST_CASE("train_adaboost stops after a perfect learner") {
  Matrix x{{0, 5}, {1, 3}, {2, 9}, {3, 1}};
  std::vector<int> y{0, 0, 1, 1};
  auto fit = train_adaboost(x, y);
  CHECK(fit.model.rounds() == 1);
  CHECK(fit.stop == StopReason::PerfectLearner);
  for (std::size_t i = 0; i < 4; ++i) CHECK(predict(fit.model, x.row(i)) == y[i]);
}

TEST_CASE("train_adaboost on XOR halts with no edge") {
  Matrix x{{0, 0}, {1, 1}, {0, 1}, {1, 0}};
  std::vector<int> y{0, 0, 1, 1};
  auto fit = train_adaboost(x, y);
  CHECK(fit.model.rounds() == 0);
  CHECK(fit.stop == StopReason::NoEdge);
  CHECK(fit.rejected_epsilon == 0.5);
  CHECK(margin(fit.model, x.row(0)) == 0.0);
}

TEST_CASE("train_adaboost follows the hand-stepped reference trace") {
  // Frozen from tests/oracles/adaboost_trace.py.
  struct Ref {
    double thr;
    int pol;
    double eps, alpha;
    double w[4];
  };
  const Ref ref[] = {
      {-1.0, 1, 0.25, 0.5493061443340549, {0.16666666666666666, 0.16666666666666666, 0.5, 0.16666666666666666}},
      {1.5, -1, 0.16666666666666666, 0.8047189562170503, {0.1, 0.1, 0.30000000000000004, 0.5000000000000001}},
      {2.5, 1, 0.2, 0.6931471805599453, {0.25, 0.25, 0.18750000000000003, 0.31250000000000006}},
      {-1.0, 1, 0.18750000000000003, 0.7331685343967135,
       {0.15384615384615385, 0.15384615384615385, 0.5000000000000001, 0.19230769230769235}},
      {1.5, -1, 0.19230769230769235, 0.7175422626446613,
       {0.09523809523809523, 0.09523809523809523, 0.30952380952380953, 0.49999999999999994}},
  };
  Matrix x{{0}, {1}, {2}, {3}};
  std::vector<int> y{1, 1, 0, 1};
  AdaBoostOptions opt;
  opt.max_rounds = 5;
  opt.record_weights = true;
  auto fit = train_adaboost(x, y, opt);
  REQUIRE(fit.trace.size() == 5);
  CHECK(fit.stop == StopReason::MaxRounds);
  for (std::size_t t = 0; t < 5; ++t) {
    CAPTURE(t);
    CHECK(fit.trace[t].stump.threshold == ref[t].thr);
    CHECK(fit.trace[t].stump.polarity == ref[t].pol);
    CHECK(std::abs(fit.trace[t].epsilon - ref[t].eps) <= 1e-12);
    CHECK(std::abs(fit.trace[t].alpha - ref[t].alpha) <= 1e-12);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(fit.trace[t].weights_after[i] - ref[t].w[i]) <= 1e-12);
  }
}

TEST_CASE("train_adaboost invariants on random data") {
  Rng rng(55);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 30 + rng.index(30);
    Matrix x = testing::random_matrix(rng, n, 3);
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = (x(i, 0) * x(i, 1) + 0.3 * rng.normal() > 0) ? 1 : 0;
    y[0] = 0;
    y[1] = 1;
    AdaBoostOptions opt;
    opt.max_rounds = 25;
    opt.record_weights = true;
    auto fit = train_adaboost(x, y, opt);
    double bound = 1.0;
    for (const auto& r : fit.trace) {
      double s = 0;
      for (double w : r.weights_after) s += w;
      CHECK(std::abs(s - 1.0) <= 1e-12);
      CHECK(r.alpha > 0.0);
      // The stump just fitted is at chance under the updated weights.
      std::vector<int> ypm(n);
      for (std::size_t i = 0; i < n; ++i) ypm[i] = y[i] ? 1 : -1;
      CHECK(std::abs(weighted_error(r.stump, x, ypm, r.weights_after) - 0.5) <= 1e-9);
      bound *= 2.0 * std::sqrt(r.epsilon * (1.0 - r.epsilon));
    }
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double m = margin(fit.model, x.row(i));
      CHECK(predict(fit.model, x.row(i)) == (m > 0 ? 1 : 0));
      wrong += predict(fit.model, x.row(i)) != y[i];
    }
    CHECK(static_cast<double>(wrong) / n <= bound + 1e-12);
    auto again = train_adaboost(x, y, opt);
    CHECK(again.model == fit.model);
  }
}

TEST_CASE("alpha decreases with error") {
  double prev = INFINITY;
  for (double e = 0.01; e < 0.5; e += 0.01) {
    const double a = 0.5 * std::log((1 - e) / e);
    CHECK(a < prev);
    prev = a;
  }
}

TEST_CASE("margin and predict") {
  AdaBoostModel m;
  m.input_dims = 1;
  m.learners = {{Stump{0, 0.0, 1}, 0.7}};
  const double pos[] = {1.0}, neg[] = {-1.0};
  CHECK(margin(m, pos) == 0.7);
  CHECK(predict(m, pos) == 1);
  CHECK(margin(m, neg) == -0.7);
  CHECK(predict(m, neg) == 0);
  m.learners.push_back({Stump{0, 0.0, -1}, 0.7});
  CHECK(margin(m, pos) == 0.0);
  CHECK(predict(m, pos) == 0);
  const double wide[] = {1.0, 2.0};
  CHECK_THROWS_AS(margin(m, wide), ShapeError);
  AdaBoostModel empty;
  empty.input_dims = 1;
  CHECK(margin(empty, pos) == 0.0);
}

TEST_CASE("margins equal a per-learner sum") {
  AdaBoostModel m;
  m.input_dims = 2;
  m.learners = {{Stump{0, 0.5, 1}, 0.4}, {Stump{1, -0.2, -1}, 1.1}, {Stump{0, 2.0, -1}, 0.25}};
  Matrix rows{{0, 0}, {1, -1}, {3, 3}, {0.5, -0.2}, {-4, 1}};
  // Hand-evaluated: h1 = x0 > 0.5, h2 = x1 < -0.2, h3 = x0 < 2.
  const double expected[] = {-0.4 - 1.1 + 0.25, 0.4 + 1.1 + 0.25, 0.4 - 1.1 - 0.25, -0.4 - 1.1 + 0.25,
                             -0.4 - 1.1 + 0.25};
  for (std::size_t i = 0; i < 5; ++i) CHECK(margin(m, rows.row(i)) == doctest::Approx(expected[i]).epsilon(1e-15));
}

TEST_CASE("train_adaboost rejects a single class") {
  Matrix x{{1}, {2}};
  std::vector<int> y{1, 1};
  CHECK_THROWS_AS(train_adaboost(x, y), ClassError);
}
