#include "itd/pca.hpp"

#include <algorithm>

#include "itd/error.hpp"
#include "itd/linalg.hpp"
#include "itd/text.hpp"

namespace itd {

std::string describe(const PcaSelector& selector) {
  if (const auto* k = std::get_if<TopK>(&selector)) return "top-k(" + std::to_string(k->k) + ")";
  return "variance-fraction(" + format_shortest(std::get<VarianceFraction>(selector).fraction) + ")";
}

PcaModel fit_pca(const Matrix& rows, const PcaSelector& selector) {
  const std::size_t d = rows.cols();
  if (const auto* k = std::get_if<TopK>(&selector)) {
    if (k->k < 1 || k->k > d)
      throw ParameterError("PCA top-k must satisfy 1 <= k <= " + std::to_string(d) + ", got " +
                           std::to_string(k->k));
  } else {
    const double f = std::get<VarianceFraction>(selector).fraction;
    if (!(f > 0.0 && f <= 1.0)) throw ParameterError("PCA variance fraction must lie in (0, 1]");
  }

  const SymMatrix sigma = covariance(rows);
  const EigenDecomposition eig = sym_eigen(sigma);

  std::vector<double> lambda = eig.values;
  for (double& l : lambda) l = std::max(l, 0.0);
  double total = 0.0;
  for (double l : lambda) total += l;

  std::size_t keep = 0;
  if (const auto* k = std::get_if<TopK>(&selector)) {
    keep = k->k;
  } else {
    const double f = std::get<VarianceFraction>(selector).fraction;
    keep = d;
    if (total > 0.0) {
      double cum = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        cum += lambda[i] / total;
        if (cum >= f - 1e-12) {
          keep = i + 1;
          break;
        }
      }
    } else {
      keep = 1;
    }
  }

  PcaModel model;
  model.mean = column_means(rows);
  model.components = Matrix(keep, d);
  for (std::size_t i = 0; i < keep; ++i) {
    auto src = eig.vectors.row(i);
    std::copy(src.begin(), src.end(), model.components.row(i).begin());
    model.eigenvalues.push_back(lambda[i]);
    model.explained_variance_ratio.push_back(total > 0.0 ? lambda[i] / total : 0.0);
  }
  return model;
}

Matrix project(const PcaModel& model, const Matrix& rows) {
  const std::size_t d = model.input_dims();
  if (rows.rows() > 0 && rows.cols() != d)
    throw ShapeError("PCA projection expects " + std::to_string(d) + " columns, got " +
                     std::to_string(rows.cols()));
  const std::size_t k = model.n_components();
  Matrix out(rows.rows(), k);
  std::vector<double> centred(d);
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    auto x = rows.row(r);
    for (std::size_t c = 0; c < d; ++c) centred[c] = x[c] - model.mean[c];
    for (std::size_t i = 0; i < k; ++i) out(r, i) = dot(model.components.row(i), centred);
  }
  return out;
}

Matrix reconstruct(const PcaModel& model, const Matrix& projected) {
  const std::size_t k = model.n_components();
  if (projected.rows() > 0 && projected.cols() != k)
    throw ShapeError("PCA reconstruction expects " + std::to_string(k) + " columns, got " +
                     std::to_string(projected.cols()));
  const std::size_t d = model.input_dims();
  Matrix out(projected.rows(), d);
  for (std::size_t r = 0; r < projected.rows(); ++r)
    for (std::size_t c = 0; c < d; ++c) {
      double v = model.mean[c];
      for (std::size_t i = 0; i < k; ++i) v += model.components(i, c) * projected(r, i);
      out(r, c) = v;
    }
  return out;
}

}  // namespace itd
