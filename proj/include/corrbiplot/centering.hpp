#pragma once

#include "corrbiplot/corrdata.hpp"
#include "corrbiplot/matrix.hpp"

namespace corrbiplot {

enum class CenterMode { overall, column, double_centered };

/// A centered correlation matrix together with the structure removed from it,
/// so the original matrix can be reconstructed exactly. Margins include the
/// unit diagonal (r_i. averages over all j).
struct CenteredMatrix {
  Matrix values;
  CenterMode mode;
  double grand = 0.0;     // overall and double
  Vector column_means;    // column and double
  Vector row_means;       // double only
  /// delta*J + 1 q' + p 1' with the terms this mode removed.
  Matrix reconstruction_of_removed() const;
};

/// H = I - (1/p) 1 1'.
Matrix centring_matrix(std::size_t p);

/// values = R - delta*J with delta the grand mean (diagonal included).
CenteredMatrix adjust_overall(const CorrelationMatrix& r);

/// values = H R; removes column means.
CenteredMatrix adjust_columns(const CorrelationMatrix& r);

/// values = H R H; removes row means, column means and adds back the grand mean.
CenteredMatrix adjust_double(const CorrelationMatrix& r);

}  // namespace corrbiplot
