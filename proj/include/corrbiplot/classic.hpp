#pragma once

#include "corrbiplot/centering.hpp"
#include "corrbiplot/fit.hpp"

namespace corrbiplot {

/// Eigen-truncation of R itself; diagonal fitted, unit weights.
Fit pca_fit(const CorrelationMatrix& r, std::size_t rank);

/// SVD truncation of the centered matrix for the given mode, with the removed
/// margins stored as delta/q/prow so `fitted` lives on the correlation scale.
/// Reported weights: unit for mode=overall, zero-diagonal for column/double.
Fit svd_fit(const CorrelationMatrix& r, std::size_t rank, CenterMode mode);

/// Iterated principal-axis factoring with communalities on the diagonal.
Fit pfa_fit(const CorrelationMatrix& r, std::size_t rank, double tol = 1e-8,
            std::size_t max_iter = 1000);

}  // namespace corrbiplot
