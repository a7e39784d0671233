#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "corrbiplot/error.hpp"
#include "corrbiplot/matrix.hpp"

namespace corrbiplot {

/// Symmetric p x p matrix with unit diagonal and entries in [-1, 1].
/// Immutable after construction; validate() enforces the invariants.
struct CorrelationMatrix {
  std::vector<std::string> labels;
  Matrix values;

  std::size_t size() const { return values.rows(); }
};

/// Symmetric non-negative entry weights. A zero diagonal means
/// "do not fit the diagonal".
struct WeightMatrix {
  Matrix values;

  std::size_t size() const { return values.rows(); }
};

/// Throws on any invariant violation (symmetry, unit diagonal, range, p >= 2).
void validate(const CorrelationMatrix& r);

/// CSV with a header row of labels and a leading label column.
/// Values are symmetrized as (M + M')/2 when the worst asymmetry is <= 1e-9.
CorrelationMatrix parse_correlation_csv(std::istream& in);
CorrelationMatrix parse_correlation_csv(std::string_view text);

/// Round-trippable serialization; `precision` is significant digits.
std::string to_csv(const CorrelationMatrix& r, int precision = 17);

/// Pearson product-moment correlations of the columns of an n x p data matrix.
CorrelationMatrix correlation_from_data(const Matrix& data,
                                        const std::vector<std::string>& labels);

/// One of: goblets, milk, beans16, beans10.
CorrelationMatrix builtin_dataset(std::string_view name);
std::vector<std::string> builtin_dataset_names();

/// Unit diagonal, constant off-diagonal r. Requires -1/(p-1) < r < 1.
CorrelationMatrix equicorrelation(std::size_t p, double r);

/// w_ij = 1 for i != j, zero diagonal (unnormalized).
WeightMatrix offdiag_weights(std::size_t p);

/// All-ones weights (diagonal fitted too).
WeightMatrix unit_weights(std::size_t p);

}  // namespace corrbiplot
