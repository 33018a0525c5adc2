#include "itd/normalize.hpp"

#include <algorithm>

#include "itd/error.hpp"

namespace itd {

NormParams fit_normalizer(const FeatureTable& table) {
  table.validate();
  return fit_normalizer(table.values);
}

NormParams fit_normalizer(const Matrix& values) {
  if (values.rows() == 0) throw ParameterError("fit_normalizer: table has no rows");
  NormParams p;
  p.min.assign(values.row(0).begin(), values.row(0).end());
  p.max = p.min;
  for (std::size_t r = 1; r < values.rows(); ++r) {
    auto row = values.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      p.min[c] = std::min(p.min[c], row[c]);
      p.max[c] = std::max(p.max[c], row[c]);
    }
  }
  return p;
}

double normalize_value(double x, double lo, double hi) {
  if (hi == lo) return 0.0;
  return (x - lo) / (hi - lo);
}

Matrix apply_normalizer(const NormParams& params, const Matrix& values) {
  if (values.rows() > 0 && values.cols() != params.cols())
    throw ShapeError("apply_normalizer: table has " + std::to_string(values.cols()) +
                     " columns, parameters cover " + std::to_string(params.cols()));
  Matrix out(values.rows(), params.cols());
  for (std::size_t r = 0; r < values.rows(); ++r)
    for (std::size_t c = 0; c < params.cols(); ++c)
      out(r, c) = normalize_value(values(r, c), params.min[c], params.max[c]);
  return out;
}

FeatureTable apply_normalizer(const NormParams& params, const FeatureTable& table) {
  if (table.cols() != params.cols())
    throw ShapeError("apply_normalizer: table has " + std::to_string(table.cols()) +
                     " columns, parameters cover " + std::to_string(params.cols()));
  FeatureTable out = table;
  out.values = apply_normalizer(params, table.values);
  return out;
}

}  // namespace itd
