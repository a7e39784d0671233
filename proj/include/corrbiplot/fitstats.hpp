#pragma once

#include "corrbiplot/corrdata.hpp"
#include "corrbiplot/fit.hpp"
#include "corrbiplot/matrix.hpp"

namespace corrbiplot {

struct FitReport {
  double overall_rmse = 0.0;
  std::vector<std::string> labels;
  Vector per_variable;
  double weights_total = 0.0;
  bool diagonal_included = false;
};

/// sqrt( sum w_ij e_ij^2 / sum w_ij ). Valid for asymmetric E.
double rmse(const Matrix& e, const WeightMatrix& w);

/// Per-variable RMSE z_i over row i and column i of E, diagonal counted once.
Vector rmse_per_variable(const Matrix& e, const WeightMatrix& w);

/// Residual of the aggregation identity tying the overall RMSE to the z_i.
double check_aggregation(const Matrix& e, const WeightMatrix& w);

/// Report with the weights the fit was computed under.
FitReport make_report(const Fit& fit);

}  // namespace corrbiplot
