#include "itd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "itd/error.hpp"
#include "itd/text.hpp"

namespace itd {

SymMatrix::SymMatrix(Matrix entries) : entries_(std::move(entries)) {
  const std::size_t d = entries_.rows();
  if (entries_.cols() != d)
    throw ShapeError("symmetric matrix must be square, got " + std::to_string(d) + "x" +
                     std::to_string(entries_.cols()));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const double a = entries_(i, j);
      if (!std::isfinite(a)) throw ParameterError("symmetric matrix has a non-finite entry");
      if (std::abs(a - entries_(j, i)) > 1e-12 * std::max(1.0, std::abs(a)))
        throw ParameterError("matrix is not symmetric at (" + std::to_string(i) + ", " +
                             std::to_string(j) + ")");
    }
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < order(); ++i) t += entries_(i, i);
  return t;
}

double SymMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : entries_.data()) s += v * v;
  return std::sqrt(s);
}

std::vector<double> column_means(const Matrix& rows) {
  std::vector<double> mean(rows.cols(), 0.0);
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    auto x = rows.row(r);
    for (std::size_t c = 0; c < mean.size(); ++c) mean[c] += x[c];
  }
  for (double& m : mean) m /= static_cast<double>(rows.rows());
  return mean;
}

SymMatrix covariance(const Matrix& rows) {
  const std::size_t n = rows.rows();
  if (n < 2) throw ParameterError("covariance needs at least 2 rows, got " + std::to_string(n));
  const std::size_t d = rows.cols();
  const auto mean = column_means(rows);
  Matrix sigma(d, d);
  std::vector<double> centred(d);
  for (std::size_t r = 0; r < n; ++r) {
    auto x = rows.row(r);
    for (std::size_t c = 0; c < d; ++c) centred[c] = x[c] - mean[c];
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j) sigma(i, j) += centred[i] * centred[j];
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      sigma(i, j) *= inv_n;
      sigma(j, i) = sigma(i, j);
    }
  return SymMatrix(std::move(sigma));
}

void canonicalize_sign(std::span<double> v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  if (!v.empty() && v[best] < 0.0)
    for (double& x : v) x = -x;
}

namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

// Annihilates a(p, q) with one rotation, accumulating it into v's columns.
void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t;
  if (std::abs(tau) > 1e150) {
    t = 0.5 / tau;
  } else {
    t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  }
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const std::size_t d = a.rows();
  for (std::size_t k = 0; k < d; ++k) {
    const double akp = a(k, p), akq = a(k, q);
    a(k, p) = c * akp - s * akq;
    a(k, q) = s * akp + c * akq;
  }
  for (std::size_t k = 0; k < d; ++k) {
    const double apk = a(p, k), aqk = a(q, k);
    a(p, k) = c * apk - s * aqk;
    a(q, k) = s * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    const double vkp = v(k, p), vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

}  // namespace

EigenDecomposition sym_eigen(const SymMatrix& input, double tol, int max_sweeps) {
  const std::size_t d = input.order();
  Matrix a = input.matrix();
  Matrix v = Matrix::identity(d);
  const double scale = input.frobenius_norm();

  int sweeps = 0;
  double off = off_diagonal_norm(a);
  while (off > tol * scale) {
    if (sweeps == max_sweeps)
      throw NumericalError("Jacobi eigensolver did not converge in " + std::to_string(max_sweeps) +
                           " sweeps (off-diagonal norm " + format_double(off) + ", target " +
                           format_double(tol * scale) + ")");
    for (std::size_t p = 0; p + 1 < d; ++p)
      for (std::size_t q = p + 1; q < d; ++q) rotate(a, v, p, q);
    ++sweeps;
    off = off_diagonal_norm(a);
  }

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  EigenDecomposition out;
  out.sweeps = sweeps;
  out.vectors = Matrix(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    const std::size_t src = order[r];
    out.values.push_back(a(src, src));
    for (std::size_t k = 0; k < d; ++k) out.vectors(r, k) = v(k, src);
    canonicalize_sign(out.vectors.row(r));
  }
  return out;
}

}  // namespace itd
