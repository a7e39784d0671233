#include "corrbiplot/classic.hpp"

#include <cmath>

#include "corrbiplot/error.hpp"
#include "corrbiplot/linalg.hpp"

namespace corrbiplot {

namespace {

void finish(Fit& fit, const CorrelationMatrix& r) {
  fit.labels = r.labels;
  fit.fitted = assemble_fitted(r.size(), fit.delta, fit.q, fit.prow, fit.g,
                               fit.b ? &*fit.b : nullptr);
  fit.residual = r.values;
  fit.residual -= fit.fitted;
}

}  // namespace

Matrix assemble_fitted(std::size_t p, double delta, const Vector& q, const Vector& prow,
                       const Matrix& g, const Matrix* b) {
  Matrix fitted = b ? mult_abt(g, *b) : mult_abt(g, g);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      double adj = delta;
      if (!q.empty()) adj += q[j];
      if (!prow.empty()) adj += prow[i];
      fitted(i, j) += adj;
    }
  return fitted;
}

Fit pca_fit(const CorrelationMatrix& r, std::size_t rank) {
  if (rank > r.size()) throw Error(Errc::rank_too_large, "rank exceeds p");
  Fit fit;
  fit.method = Method::pca;
  fit.rank = rank;
  fit.g = truncated_symmetric_factor(r.values, rank);
  fit.weights = unit_weights(r.size());
  finish(fit, r);
  return fit;
}

Fit svd_fit(const CorrelationMatrix& r, std::size_t rank, CenterMode mode) {
  const std::size_t p = r.size();
  if (rank > p) throw Error(Errc::rank_too_large, "rank exceeds p");

  Fit fit;
  fit.rank = rank;
  CenteredMatrix centered;
  switch (mode) {
    case CenterMode::overall:
      fit.method = Method::svd_overall;
      centered = adjust_overall(r);
      fit.delta = centered.grand;
      break;
    case CenterMode::column:
      fit.method = Method::svd_column;
      centered = adjust_columns(r);
      fit.q = centered.column_means;
      break;
    case CenterMode::double_centered:
      fit.method = Method::svd_double;
      centered = adjust_double(r);
      fit.delta = -centered.grand;
      fit.q = centered.column_means;
      fit.prow = centered.row_means;
      break;
  }

  const Svd dec = svd(centered.values);
  fit.g = Matrix(p, rank);
  fit.b = Matrix(p, rank);
  for (std::size_t k = 0; k < rank; ++k) {
    const double scale = std::sqrt(dec.singular_values[k]);
    for (std::size_t i = 0; i < p; ++i) {
      fit.g(i, k) = scale * dec.u(i, k);
      (*fit.b)(i, k) = scale * dec.v(i, k);
    }
  }
  // Table-1 reporting convention: the centered variants exclude the diagonal.
  fit.weights = (mode == CenterMode::overall) ? unit_weights(p) : offdiag_weights(p);
  finish(fit, r);
  return fit;
}

Fit pfa_fit(const CorrelationMatrix& r, std::size_t rank, double tol, std::size_t max_iter) {
  const std::size_t p = r.size();
  if (rank > p) throw Error(Errc::rank_too_large, "rank exceeds p");

  // initial communalities: largest absolute off-diagonal correlation per row
  Vector h(p, 0.0);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      if (i != j) h[i] = std::max(h[i], std::fabs(r.values(i, j)));

  Fit fit;
  fit.method = Method::pfa;
  fit.rank = rank;
  fit.converged = false;

  Matrix s = r.values;
  for (std::size_t it = 0; it < max_iter; ++it) {
    for (std::size_t i = 0; i < p; ++i) s(i, i) = h[i];
    fit.g = truncated_symmetric_factor(s, rank);
    double change = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      double hi = 0.0;
      for (std::size_t k = 0; k < rank; ++k) hi += fit.g(i, k) * fit.g(i, k);
      hi = std::clamp(hi, 0.0, 1.0);
      change = std::max(change, std::fabs(hi - h[i]));
      h[i] = hi;
    }
    fit.iterations = it + 1;
    if (change <= tol) {
      fit.converged = true;
      break;
    }
  }

  fit.weights = offdiag_weights(p);
  finish(fit, r);
  return fit;
}

}  // namespace corrbiplot
