#include "corrbiplot/centering.hpp"

#include "corrbiplot/error.hpp"

namespace corrbiplot {

Matrix CenteredMatrix::reconstruction_of_removed() const {
  const std::size_t p = values.rows();
  Matrix rec(p, p);
  switch (mode) {
    case CenterMode::overall:
      for (double& x : rec.data()) x = grand;
      break;
    case CenterMode::column:
      for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) rec(i, j) = column_means[j];
      break;
    case CenterMode::double_centered:
      for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) rec(i, j) = row_means[i] + column_means[j] - grand;
      break;
  }
  return rec;
}

Matrix centring_matrix(std::size_t p) {
  if (p < 2) throw Error(Errc::too_few_rows, "centring matrix needs p >= 2");
  Matrix h(p, p, -1.0 / static_cast<double>(p));
  for (std::size_t i = 0; i < p; ++i) h(i, i) += 1.0;
  return h;
}

CenteredMatrix adjust_overall(const CorrelationMatrix& r) {
  CenteredMatrix out;
  out.mode = CenterMode::overall;
  out.grand = grand_mean(r.values);
  out.values = r.values;
  for (double& x : out.values.data()) x -= out.grand;
  return out;
}

CenteredMatrix adjust_columns(const CorrelationMatrix& r) {
  const std::size_t p = r.size();
  CenteredMatrix out;
  out.mode = CenterMode::column;
  out.column_means = col_means(r.values);
  out.values = r.values;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) out.values(i, j) -= out.column_means[j];
  return out;
}

CenteredMatrix adjust_double(const CorrelationMatrix& r) {
  const std::size_t p = r.size();
  CenteredMatrix out;
  out.mode = CenterMode::double_centered;
  out.row_means = row_means(r.values);
  out.column_means = col_means(r.values);
  out.grand = grand_mean(r.values);
  out.values = Matrix(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      out.values(i, j) = r.values(i, j) - out.row_means[i] - out.column_means[j] + out.grand;
  return out;
}

}  // namespace corrbiplot
