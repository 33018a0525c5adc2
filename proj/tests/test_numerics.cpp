#include <Eigen/Eigenvalues>
#include <cmath>

#include "doctest.h"
#include "itd/error.hpp"
#include "itd/linalg.hpp"
#include "itd/pca.hpp"
#include "test_support.hpp"

using namespace itd;

namespace {

// Naive double-loop covariance, written independently of covariance().
Matrix naive_covariance(const Matrix& x) {
  const std::size_t n = x.rows(), d = x.cols();
  Matrix s(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      double mi = 0, mj = 0;
      for (std::size_t r = 0; r < n; ++r) {
        mi += x(r, i);
        mj += x(r, j);
      }
      mi /= n;
      mj /= n;
      double acc = 0;
      for (std::size_t r = 0; r < n; ++r) acc += (x(r, i) - mi) * (x(r, j) - mj);
      s(i, j) = acc / n;
    }
  return s;
}

std::vector<double> eigen_oracle(const Matrix& a) {
  Eigen::MatrixXd m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  std::vector<double> v(solver.eigenvalues().data(), solver.eigenvalues().data() + a.rows());
  std::sort(v.rbegin(), v.rend());
  return v;
}

double residual(const Matrix& a, std::span<const double> v, double lambda) {
  double s = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double r = dot(a.row(i), v) - lambda * v[i];
    s += r * r;
  }
  return std::sqrt(s);
}

double column_variance(const Matrix& m, std::size_t c) {
  double mean = 0;
  for (std::size_t r = 0; r < m.rows(); ++r) mean += m(r, c);
  mean /= m.rows();
  double v = 0;
  for (std::size_t r = 0; r < m.rows(); ++r) v += (m(r, c) - mean) * (m(r, c) - mean);
  return v / m.rows();
}

}  // namespace

TEST_CASE("covariance of two opposite points") {
  auto s = covariance(Matrix{{1, 1}, {-1, -1}});
  CHECK(s.matrix() == Matrix{{1, 1}, {1, 1}});
}

TEST_CASE("covariance of identical rows is zero") {
  auto s = covariance(Matrix{{3, -2, 5}, {3, -2, 5}, {3, -2, 5}});
  for (double v : s.matrix().data()) CHECK(v == 0.0);
}

TEST_CASE("covariance matches a naive double loop") {
  Rng rng(99);
  auto x = testing::random_matrix(rng, 20, 5, -3, 7);
  auto s = covariance(x);
  auto ref = naive_covariance(x);
  for (std::size_t i = 0; i < 25; ++i) CHECK(std::abs(s.matrix().data()[i] - ref.data()[i]) <= 1e-12);
}

TEST_CASE("covariance is positive semidefinite") {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = covariance(testing::random_matrix(rng, 3 + rng.index(10), 1 + rng.index(6)));
    const std::size_t d = s.order();
    for (int k = 0; k < 20; ++k) {
      std::vector<double> u(d);
      double norm = 0;
      for (auto& x : u) {
        x = rng.normal();
        norm += x * x;
      }
      for (auto& x : u) x /= std::sqrt(norm);
      double q = 0;
      for (std::size_t i = 0; i < d; ++i) q += u[i] * dot(s.matrix().row(i), u);
      CHECK(q >= -1e-10);
    }
  }
}

TEST_CASE("covariance needs two rows") { CHECK_THROWS_AS(covariance(Matrix{{1, 2}}), ParameterError); }

TEST_CASE("SymMatrix rejects asymmetric input") {
  CHECK_THROWS_AS(SymMatrix(Matrix{{1, 2}, {2.1, 1}}), ParameterError);
  CHECK_THROWS_AS(SymMatrix(Matrix{{1, 2}}), ShapeError);
}

TEST_CASE("sym_eigen on a diagonal matrix") {
  auto e = sym_eigen(SymMatrix(Matrix{{1, 0}, {0, 2}}));
  CHECK(e.values == std::vector<double>{2, 1});
  CHECK(e.vectors == Matrix{{0, 1}, {1, 0}});
}

TEST_CASE("sym_eigen on a rank-one matrix") {
  auto e = sym_eigen(SymMatrix(Matrix{{1, 1}, {1, 1}}));
  CHECK(e.values[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::abs(e.values[1]) <= 1e-14);
  CHECK(e.vectors(0, 0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(e.vectors(0, 1) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
}

TEST_CASE("sym_eigen agrees with an independent solver on random 6x6 matrices") {
  Rng rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    SymMatrix a(testing::random_symmetric(rng, 6));
    auto e = sym_eigen(a);
    auto ref = eigen_oracle(a.matrix());
    const double scale = a.frobenius_norm();
    for (std::size_t i = 0; i < 6; ++i) {
      CHECK(std::abs(e.values[i] - ref[i]) <= 1e-8 * scale);
      CHECK(residual(a.matrix(), e.vectors.row(i), e.values[i]) <= 1e-8 * scale);
    }
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j)
        CHECK(std::abs(dot(e.vectors.row(i), e.vectors.row(j)) - (i == j ? 1.0 : 0.0)) <= 1e-9);
    double sum = 0;
    for (double v : e.values) sum += v;
    CHECK(std::abs(sum - a.trace()) <= 1e-9);
  }
}

TEST_CASE("sym_eigen reports non-convergence") {
  Rng rng(8);
  SymMatrix a(testing::random_symmetric(rng, 5));
  try {
    sym_eigen(a, 1e-300, 1);
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(std::string(e.what()).find("off-diagonal norm") != std::string::npos);
  }
}

TEST_CASE("fit_pca on collinear points finds the diagonal") {
  auto m = fit_pca(Matrix{{0, 0}, {1, 1}, {2, 2}, {5, 5}}, VarianceFraction{0.95});
  REQUIRE(m.n_components() == 1);
  CHECK(m.explained_variance_ratio[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.components(0, 0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(m.components(0, 1) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("fit_pca with a full basis explains all variance") {
  Rng rng(3);
  auto x = testing::random_matrix(rng, 40, 5);
  auto m = fit_pca(x, TopK{5});
  double s = 0;
  for (double r : m.explained_variance_ratio) s += r;
  CHECK(std::abs(s - 1.0) <= 1e-9);
  CHECK_THROWS_AS(fit_pca(x, TopK{6}), ParameterError);
  CHECK_THROWS_AS(fit_pca(x, TopK{0}), ParameterError);
  CHECK_THROWS_AS(fit_pca(x, VarianceFraction{0.0}), ParameterError);
}

TEST_CASE("fit_pca variance-fraction selection on a constructed spectrum") {
  // Rows +-a e_i give covariance diag(a^2/3): eigenvalues 6, 3, 1 -> shares 0.6, 0.3, 0.1.
  const double a = std::sqrt(18.0), b = 3.0, c = std::sqrt(3.0);
  Matrix x{{a, 0, 0}, {-a, 0, 0}, {0, b, 0}, {0, -b, 0}, {0, 0, c}, {0, 0, -c}};
  auto m95 = fit_pca(x, VarianceFraction{0.95});
  CHECK(m95.n_components() == 3);
  CHECK(m95.explained_variance_ratio[0] == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(m95.explained_variance_ratio[1] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(fit_pca(x, VarianceFraction{0.9}).n_components() == 2);
  CHECK(fit_pca(x, VarianceFraction{0.5}).n_components() == 1);
}

TEST_CASE("projection properties") {
  Rng rng(12);
  Matrix x = testing::random_matrix(rng, 50, 4);
  for (std::size_t r = 0; r < x.rows(); ++r) x(r, 1) = 0.5 * x(r, 0) + 0.1 * x(r, 1);
  auto m = fit_pca(x, TopK{4});

  SUBCASE("mean maps to zero") {
    Matrix mean_row(1, 4);
    for (std::size_t c = 0; c < 4; ++c) mean_row(0, c) = m.mean[c];
    const Matrix projected = project(m, mean_row);
    for (double v : projected.data()) CHECK(std::abs(v) <= 1e-15);
  }
  SUBCASE("full-basis round trip") {
    auto back = reconstruct(m, project(m, x));
    for (std::size_t i = 0; i < x.data().size(); ++i) CHECK(std::abs(back.data()[i] - x.data()[i]) <= 1e-9);
  }
  SUBCASE("projected variances equal eigenvalues and are ordered") {
    auto y = project(m, x);
    for (std::size_t c = 0; c < 4; ++c) {
      CHECK(std::abs(column_variance(y, c) - m.eigenvalues[c]) <= 1e-9);
      if (c > 0) CHECK(column_variance(y, c) <= column_variance(y, c - 1) + 1e-12);
    }
  }
  SUBCASE("shape mismatch") { CHECK_THROWS_AS(project(m, Matrix{{1, 2, 3}}), ShapeError); }
  SUBCASE("deterministic") { CHECK(fit_pca(x, TopK{4}) == m); }
}
