#pragma once

#include <optional>

#include "corrbiplot/fit.hpp"

namespace corrbiplot {

enum class WalsMode { null_mode, delta, q_sym, q, p_q };

/// Control parameters for the weighted alternating least squares family.
/// The defaults are the documented artifact defaults; all are overridable.
struct WalsConfig {
  std::size_t rank = 2;
  WalsMode mode = WalsMode::null_mode;

  /// ipSymLS: relative loss-decrease threshold and iteration cap.
  double inner_rel_tol = 1e-8;
  std::size_t max_inner = 2000;

  /// delta mode: absolute per-cycle loss-decrease threshold and cycle cap.
  /// The delta loss surface has an unbounded flat valley, so an absolute
  /// threshold (not a relative one) pins where the iteration settles.
  double delta_abs_tol = 1e-8;
  std::size_t max_cycles = 2000000;

  /// q_sym loops: relative thresholds and caps for the G/delta loop and the
  /// outer q loop.
  double outer_rel_tol = 1e-8;
  std::size_t max_gdelta = 50;
  std::size_t max_outer = 200;

  /// asymmetric modes (q, p_q): absolute per-cycle loss-decrease threshold.
  double ab_abs_tol = 1e-9;

  std::optional<Matrix> init_g;
};

/// tr(E' (W o E)) with E = R - fitted.
double loss(const Matrix& r, const WeightMatrix& w, const Matrix& fitted);

/// Weighted symmetric low-rank solver: minimizes sum w_ij (t_ij - g_i'g_j)^2
/// by iterative majorization. Monotone in the loss.
Matrix ipsymls(const Matrix& target, const WeightMatrix& w, std::size_t rank, const Matrix& g0,
               double rel_tol = 1e-10, std::size_t max_iter = 2000, bool* converged = nullptr,
               std::vector<double>* trace = nullptr);

/// Exact minimizer of the loss in delta alone: the weighted mean of
/// R - 1q' - prow 1' - product under W.
double update_delta(const Matrix& r, const WeightMatrix& w, const Vector& q, const Vector& prow,
                    const Matrix& product);

/// Exact column adjustments: q_j = weighted mean over i of
/// (r_ij - delta - prow_i - product_ij).
Vector update_q(const Matrix& r, const WeightMatrix& w, double delta, const Vector& prow,
                const Matrix& product);

/// Exact row adjustments, mirror of update_q.
Vector update_p(const Matrix& r, const WeightMatrix& w, double delta, const Vector& q,
                const Matrix& product);

Fit wals_fit(const CorrelationMatrix& r, const WeightMatrix& w, const WalsConfig& config);

}  // namespace corrbiplot
