#pragma once

#include <optional>
#include <string>
#include <vector>

#include "corrbiplot/corrdata.hpp"
#include "corrbiplot/matrix.hpp"

namespace corrbiplot {

enum class Method {
  pca,
  svd_overall,
  svd_column,
  svd_double,
  pfa,
  wals_null,
  wals_delta,
  wals_q_sym,
  wals_q,
  wals_p_q,
};

std::string method_name(Method m);
std::optional<Method> method_from_name(const std::string& name);

/// Result of any approximation method.
/// fitted = delta*J + 1 q' + prow 1' + G (B or G)'; absent adjustments are
/// zero, absent B means the symmetric factorization G G'.
struct Fit {
  Method method = Method::pca;
  std::size_t rank = 0;
  std::vector<std::string> labels;

  Matrix g;
  std::optional<Matrix> b;
  double delta = 0.0;
  Vector q;     // empty when the mode has no column adjustment
  Vector prow;  // empty when the mode has no row adjustment

  Matrix fitted;
  Matrix residual;  // R - fitted, exactly
  WeightMatrix weights;

  std::vector<double> loss_trace;
  bool converged = true;
  std::size_t iterations = 0;

  bool symmetric_factors() const { return !b.has_value(); }
  double q_at(std::size_t j) const { return q.empty() ? 0.0 : q[j]; }
  double prow_at(std::size_t i) const { return prow.empty() ? 0.0 : prow[i]; }
};

/// delta*J + 1 q' + prow 1' + G (B or G)'.
Matrix assemble_fitted(std::size_t p, double delta, const Vector& q, const Vector& prow,
                       const Matrix& g, const Matrix* b);

}  // namespace corrbiplot
