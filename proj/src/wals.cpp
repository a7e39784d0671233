#include "corrbiplot/wals.hpp"

#include <cmath>
#include <limits>

#include "corrbiplot/error.hpp"
#include "corrbiplot/linalg.hpp"

namespace corrbiplot {

namespace {

constexpr double kTinyLoss = 1e-30;

void check_weights(const WeightMatrix& w) {
  const std::size_t p = w.size();
  if (w.values.cols() != p) throw Error(Errc::non_square, "weight matrix must be square");
  double offdiag_total = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      if (w.values(i, j) < 0.0) throw Error(Errc::invalid_argument, "negative weight");
      row += w.values(i, j);
      if (i != j) offdiag_total += w.values(i, j);
    }
    if (row <= 0.0)
      throw Error(Errc::zero_weight_row, "variable " + std::to_string(i) + " has zero total weight");
  }
  if (offdiag_total <= 0.0)
    throw Error(Errc::invalid_argument, "weights need a positive off-diagonal entry");
}

double weight_total(const WeightMatrix& w) {
  double s = 0.0;
  for (double x : w.values.data()) s += x;
  return s;
}

double max_weight(const WeightMatrix& w) {
  double s = 0.0;
  for (double x : w.values.data()) s = std::max(s, x);
  return s;
}

// Majorization surrogate: (W o T + (wmax J - W) o F) / wmax.
Matrix surrogate(const Matrix& t, const WeightMatrix& w, double wmax, const Matrix& f) {
  const std::size_t p = t.rows();
  Matrix m(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      m(i, j) = (w.values(i, j) * t(i, j) + (wmax - w.values(i, j)) * f(i, j)) / wmax;
  return m;
}

struct AbState {
  Matrix a;
  Matrix b;
  double delta = 0.0;
  Vector q;
  Vector prow;
};

// One full wAddPCA-style cycle count until the absolute loss decrease falls
// under tol. Returns final loss; appends to trace.
double run_ab(const Matrix& r, const WeightMatrix& w, std::size_t rank, bool with_prow,
              AbState& st, double abs_tol, std::size_t max_cycles, std::vector<double>& trace,
              bool& converged, std::size_t& cycles) {
  const std::size_t p = r.rows();
  const double wmax = max_weight(w);
  double prev = std::numeric_limits<double>::quiet_NaN();
  converged = false;
  double l = 0.0;
  for (cycles = 0; cycles < max_cycles; ++cycles) {
    const Matrix product = mult_abt(st.a, st.b);
    st.delta = update_delta(r, w, st.q, st.prow, product);
    st.q = update_q(r, w, st.delta, st.prow, product);
    if (with_prow) st.prow = update_p(r, w, st.delta, st.q, product);

    // gauge: absorb the means of q (and prow) into delta
    double qm = 0.0;
    for (double x : st.q) qm += x;
    qm /= static_cast<double>(p);
    for (double& x : st.q) x -= qm;
    double pm = 0.0;
    if (with_prow) {
      for (double x : st.prow) pm += x;
      pm /= static_cast<double>(p);
      for (double& x : st.prow) x -= pm;
    }
    st.delta += qm + pm;

    Matrix t = r;
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j)
        t(i, j) -= st.delta + st.q[j] + (with_prow ? st.prow[i] : 0.0);

    const Svd dec = svd(surrogate(t, w, wmax, product));
    st.a = Matrix(p, rank);
    st.b = Matrix(p, rank);
    for (std::size_t k = 0; k < rank; ++k) {
      const double scale = std::sqrt(dec.singular_values[k]);
      for (std::size_t i = 0; i < p; ++i) {
        st.a(i, k) = scale * dec.u(i, k);
        st.b(i, k) = scale * dec.v(i, k);
      }
    }

    l = loss(t, w, mult_abt(st.a, st.b));
    trace.push_back(l);
    if (!std::isnan(prev) && prev - l <= abs_tol) {
      converged = true;
      ++cycles;
      break;
    }
    prev = l;
  }
  return l;
}

Fit fit_null(const CorrelationMatrix& r, const WeightMatrix& w, const WalsConfig& cfg) {
  Fit fit;
  fit.method = Method::wals_null;
  fit.rank = cfg.rank;
  const Matrix g0 = cfg.init_g ? *cfg.init_g : truncated_symmetric_factor(r.values, cfg.rank);
  fit.g = ipsymls(r.values, w, cfg.rank, g0, cfg.inner_rel_tol, cfg.max_inner, &fit.converged,
                  &fit.loss_trace);
  fit.iterations = fit.loss_trace.size();
  return fit;
}

Fit fit_delta(const CorrelationMatrix& r, const WeightMatrix& w, const WalsConfig& cfg) {
  const double wmax = max_weight(w);

  // warm start from the converged null fit; the first delta update then
  // guarantees this mode never does worse than wals-null
  WalsConfig null_cfg = cfg;
  null_cfg.mode = WalsMode::null_mode;
  Fit fit = fit_null(r, w, null_cfg);
  fit.method = Method::wals_delta;
  fit.loss_trace.clear();
  fit.converged = false;

  double prev = std::numeric_limits<double>::quiet_NaN();
  std::size_t cycle = 0;
  for (; cycle < cfg.max_cycles; ++cycle) {
    Matrix product = mult_abt(fit.g, fit.g);
    fit.delta = update_delta(r.values, w, {}, {}, product);
    Matrix t = r.values;
    for (double& x : t.data()) x -= fit.delta;
    fit.g = truncated_symmetric_factor(surrogate(t, w, wmax, product), cfg.rank);
    const double l = loss(t, w, mult_abt(fit.g, fit.g));
    fit.loss_trace.push_back(l);
    if (!std::isnan(prev) && prev - l <= cfg.delta_abs_tol) {
      fit.converged = true;
      ++cycle;
      break;
    }
    prev = l;
  }
  fit.iterations = cycle;
  return fit;
}

Fit fit_q_sym(const CorrelationMatrix& r, const WeightMatrix& w, const WalsConfig& cfg) {
  const std::size_t p = r.size();
  Fit fit;
  fit.method = Method::wals_q_sym;
  fit.rank = cfg.rank;
  fit.converged = false;

  // the algorithm's own initialization: delta = 0, q = column means of R
  fit.g = cfg.init_g ? *cfg.init_g : truncated_symmetric_factor(r.values, cfg.rank);
  fit.delta = 0.0;
  fit.q = col_means(r.values);

  auto current_loss = [&]() {
    return loss(r.values, w, assemble_fitted(p, fit.delta, fit.q, {}, fit.g, nullptr));
  };

  double prev = std::numeric_limits<double>::quiet_NaN();
  std::size_t outer = 0;
  for (; outer < cfg.max_outer; ++outer) {
    double iprev = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t inner = 0; inner < cfg.max_gdelta; ++inner) {
      // symmetrized adjusted target
      Matrix t = r.values;
      for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j)
          t(i, j) -= fit.delta + 0.5 * fit.q[i] + 0.5 * fit.q[j];
      fit.g = ipsymls(t, w, cfg.rank, fit.g, cfg.inner_rel_tol, cfg.max_inner);
      fit.delta = update_delta(r.values, w, fit.q, {}, mult_abt(fit.g, fit.g));
      const double l = current_loss();
      fit.loss_trace.push_back(l);
      if (!std::isnan(iprev) && iprev - l <= cfg.outer_rel_tol * std::max(iprev, kTinyLoss)) break;
      iprev = l;
    }
    fit.q = update_q(r.values, w, fit.delta, {}, mult_abt(fit.g, fit.g));
    const double l = current_loss();
    fit.loss_trace.push_back(l);
    if (!std::isnan(prev) && prev - l <= cfg.outer_rel_tol * std::max(prev, kTinyLoss)) {
      fit.converged = true;
      ++outer;
      break;
    }
    prev = l;
  }
  fit.iterations = outer;
  return fit;
}

Fit fit_ab(const CorrelationMatrix& r, const WeightMatrix& w, const WalsConfig& cfg) {
  const std::size_t p = r.size();
  const bool with_prow = cfg.mode == WalsMode::p_q;

  // cold start
  AbState cold;
  cold.a = truncated_symmetric_factor(r.values, cfg.rank);
  cold.b = cold.a;
  cold.delta = 0.0;
  cold.q = col_means(r.values);
  cold.prow = Vector(p, 0.0);

  // warm start from the next-poorer mode's converged solution
  WalsConfig prev_cfg = cfg;
  prev_cfg.mode = with_prow ? WalsMode::q : WalsMode::q_sym;
  const Fit prev_fit = wals_fit(r, w, prev_cfg);
  AbState warm;
  warm.a = prev_fit.g;
  warm.b = prev_fit.b ? *prev_fit.b : prev_fit.g;
  warm.delta = prev_fit.delta;
  warm.q = prev_fit.q.empty() ? Vector(p, 0.0) : prev_fit.q;
  warm.prow = prev_fit.prow.empty() ? Vector(p, 0.0) : prev_fit.prow;

  Fit fit;
  fit.method = with_prow ? Method::wals_p_q : Method::wals_q;
  fit.rank = cfg.rank;

  std::vector<double> cold_trace, warm_trace;
  bool cold_conv = false, warm_conv = false;
  std::size_t cold_cycles = 0, warm_cycles = 0;
  const double cold_loss = run_ab(r.values, w, cfg.rank, with_prow, cold, cfg.ab_abs_tol,
                                  cfg.max_cycles, cold_trace, cold_conv, cold_cycles);
  const double warm_loss = run_ab(r.values, w, cfg.rank, with_prow, warm, cfg.ab_abs_tol,
                                  cfg.max_cycles, warm_trace, warm_conv, warm_cycles);

  const bool use_cold = cold_loss <= warm_loss;
  const AbState& best = use_cold ? cold : warm;
  fit.g = best.a;
  fit.b = best.b;
  fit.delta = best.delta;
  fit.q = best.q;
  if (with_prow) fit.prow = best.prow;
  fit.loss_trace = use_cold ? std::move(cold_trace) : std::move(warm_trace);
  fit.converged = use_cold ? cold_conv : warm_conv;
  fit.iterations = use_cold ? cold_cycles : warm_cycles;
  return fit;
}

}  // namespace

double loss(const Matrix& r, const WeightMatrix& w, const Matrix& fitted) {
  double s = 0.0;
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) {
      const double e = r(i, j) - fitted(i, j);
      s += w.values(i, j) * e * e;
    }
  return s;
}

Matrix ipsymls(const Matrix& target, const WeightMatrix& w, std::size_t rank, const Matrix& g0,
               double rel_tol, std::size_t max_iter, bool* converged, std::vector<double>* trace) {
  check_weights(w);
  const double wmax = max_weight(w);
  Matrix g = g0;
  if (converged) *converged = false;
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t it = 0; it < max_iter; ++it) {
    g = truncated_symmetric_factor(surrogate(target, w, wmax, mult_abt(g, g)), rank);
    const double l = loss(target, w, mult_abt(g, g));
    if (trace) trace->push_back(l);
    if (!std::isnan(prev) && prev - l <= rel_tol * std::max(prev, kTinyLoss)) {
      if (converged) *converged = true;
      break;
    }
    prev = l;
  }
  return g;
}

double update_delta(const Matrix& r, const WeightMatrix& w, const Vector& q, const Vector& prow,
                    const Matrix& product) {
  double num = 0.0;
  const double den = weight_total(w);
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) {
      double resid = r(i, j) - product(i, j);
      if (!q.empty()) resid -= q[j];
      if (!prow.empty()) resid -= prow[i];
      num += w.values(i, j) * resid;
    }
  return num / den;
}

Vector update_q(const Matrix& r, const WeightMatrix& w, double delta, const Vector& prow,
                const Matrix& product) {
  const std::size_t p = r.rows();
  Vector q(p, 0.0);
  for (std::size_t j = 0; j < p; ++j) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      double resid = r(i, j) - delta - product(i, j);
      if (!prow.empty()) resid -= prow[i];
      num += w.values(i, j) * resid;
      den += w.values(i, j);
    }
    if (den <= 0.0) throw Error(Errc::zero_weight_row, "zero column weight");
    q[j] = num / den;
  }
  return q;
}

Vector update_p(const Matrix& r, const WeightMatrix& w, double delta, const Vector& q,
                const Matrix& product) {
  const std::size_t p = r.rows();
  Vector prow(p, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      double resid = r(i, j) - delta - product(i, j);
      if (!q.empty()) resid -= q[j];
      num += w.values(i, j) * resid;
      den += w.values(i, j);
    }
    if (den <= 0.0) throw Error(Errc::zero_weight_row, "zero row weight");
    prow[i] = num / den;
  }
  return prow;
}

Fit wals_fit(const CorrelationMatrix& r, const WeightMatrix& w, const WalsConfig& cfg) {
  validate(r);
  check_weights(w);
  if (cfg.rank < 1 || cfg.rank > r.size())
    throw Error(Errc::rank_too_large, "rank must be in [1, p]");

  Fit fit;
  switch (cfg.mode) {
    case WalsMode::null_mode: fit = fit_null(r, w, cfg); break;
    case WalsMode::delta: fit = fit_delta(r, w, cfg); break;
    case WalsMode::q_sym: fit = fit_q_sym(r, w, cfg); break;
    case WalsMode::q:
    case WalsMode::p_q: fit = fit_ab(r, w, cfg); break;
  }
  fit.labels = r.labels;
  fit.weights = w;
  fit.fitted = assemble_fitted(r.size(), fit.delta, fit.q, fit.prow, fit.g,
                               fit.b ? &*fit.b : nullptr);
  fit.residual = r.values;
  fit.residual -= fit.fitted;
  return fit;
}

}  // namespace corrbiplot
