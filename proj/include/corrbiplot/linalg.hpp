#pragma once

#include "corrbiplot/error.hpp"
#include "corrbiplot/matrix.hpp"

namespace corrbiplot {

/// Eigenvalues sorted descending; vectors holds the matching orthonormal
/// columns. Deterministic sign convention: in each eigenvector the entry
/// of largest magnitude is positive (ties broken by lowest index).
struct SymEigen {
  Vector values;
  Matrix vectors;
};

struct Svd {
  Matrix u;
  Vector singular_values;
  Matrix v;
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
/// Symmetrizes input first; throws if asymmetry exceeds 1e-9.
SymEigen sym_eigen(const Matrix& s);

/// G = V_r Lambda_r^{1/2} from the r largest eigenvalues, clipped at zero.
/// If fewer than r eigenvalues are positive the affected columns are zero
/// and *spectrum_deficient (when given) is set.
Matrix truncated_symmetric_factor(const Matrix& s, std::size_t rank,
                                  bool* spectrum_deficient = nullptr);

/// Full SVD via the eigendecomposition of M'M; same sign determinism.
Svd svd(const Matrix& m);

}  // namespace corrbiplot
