#include "corrbiplot/fitstats.hpp"

#include <cmath>

#include "corrbiplot/error.hpp"

namespace corrbiplot {

double rmse(const Matrix& e, const WeightMatrix& w) {
  const std::size_t p = e.rows();
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      num += w.values(i, j) * e(i, j) * e(i, j);
      den += w.values(i, j);
    }
  if (den <= 0.0) throw Error(Errc::zero_total_weight, "total weight is zero");
  return std::sqrt(num / den);
}

Vector rmse_per_variable(const Matrix& e, const WeightMatrix& w) {
  const std::size_t p = e.rows();
  Vector z(p, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      num += w.values(i, j) * e(i, j) * e(i, j);
      num += w.values(j, i) * e(j, i) * e(j, i);
      den += 2.0 * w.values(i, j);
    }
    num -= w.values(i, i) * e(i, i) * e(i, i);
    den -= w.values(i, i);
    if (den <= 0.0)
      throw Error(Errc::zero_variable_weight, "variable " + std::to_string(i) + " has zero weight");
    z[i] = std::sqrt(num / den);
  }
  return z;
}

double check_aggregation(const Matrix& e, const WeightMatrix& w) {
  const std::size_t p = e.rows();
  const Vector z = rmse_per_variable(e, w);
  double num = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    double wi = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      wi += 2.0 * w.values(i, j);
      total += w.values(i, j);
    }
    wi -= w.values(i, i);
    num += 0.5 * z[i] * z[i] * wi;
    num += 0.5 * w.values(i, i) * e(i, i) * e(i, i);
  }
  return std::fabs(rmse(e, w) - std::sqrt(num / total));
}

FitReport make_report(const Fit& fit) {
  FitReport rep;
  rep.labels = fit.labels;
  rep.overall_rmse = rmse(fit.residual, fit.weights);
  rep.per_variable = rmse_per_variable(fit.residual, fit.weights);
  rep.diagonal_included = false;
  rep.weights_total = 0.0;
  for (std::size_t i = 0; i < fit.weights.size(); ++i) {
    if (fit.weights.values(i, i) > 0.0) rep.diagonal_included = true;
    for (std::size_t j = 0; j < fit.weights.size(); ++j) rep.weights_total += fit.weights.values(i, j);
  }
  return rep;
}

}  // namespace corrbiplot
