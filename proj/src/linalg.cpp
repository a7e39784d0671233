#include "corrbiplot/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace corrbiplot {

namespace {

constexpr double kAsymTol = 1e-9;
constexpr int kMaxSweeps = 100;

double offdiag_frobenius(const Matrix& s) {
  double sum = 0.0;
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (i != j) sum += s(i, j) * s(i, j);
  return std::sqrt(sum);
}

void fix_column_signs(Matrix& v) {
  for (std::size_t k = 0; k < v.cols(); ++k) {
    std::size_t arg = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < v.rows(); ++i) {
      const double a = std::fabs(v(i, k));
      if (a > best) {
        best = a;
        arg = i;
      }
    }
    if (v(arg, k) < 0.0)
      for (std::size_t i = 0; i < v.rows(); ++i) v(i, k) = -v(i, k);
  }
}

// Modified Gram-Schmidt pass over the columns, in place.
void orthonormalize_columns(Matrix& u) {
  for (std::size_t k = 0; k < u.cols(); ++k) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < k; ++j) {
        double dot = 0.0;
        for (std::size_t i = 0; i < u.rows(); ++i) dot += u(i, j) * u(i, k);
        for (std::size_t i = 0; i < u.rows(); ++i) u(i, k) -= dot * u(i, j);
      }
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < u.rows(); ++i) norm += u(i, k) * u(i, k);
    norm = std::sqrt(norm);
    if (norm > 0.0)
      for (std::size_t i = 0; i < u.rows(); ++i) u(i, k) /= norm;
  }
}

}  // namespace

SymEigen sym_eigen(const Matrix& input) {
  if (input.rows() != input.cols())
    throw Error(Errc::not_symmetric, "sym_eigen needs a square matrix");
  if (max_asymmetry(input) > kAsymTol)
    throw Error(Errc::not_symmetric, "sym_eigen input asymmetry exceeds 1e-9");

  const std::size_t n = input.rows();
  Matrix a = symmetrize(input);
  Matrix v = Matrix::identity(n);
  const double target = 1e-12 * std::max(frobenius_norm(a), 1e-300);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (offdiag_frobenius(a) <= target) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

  SymEigen out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  fix_column_signs(out.vectors);
  return out;
}

Matrix truncated_symmetric_factor(const Matrix& s, std::size_t rank, bool* spectrum_deficient) {
  if (rank < 1 || rank > s.rows())
    throw Error(Errc::rank_too_large, "rank must be in [1, p]");
  const SymEigen e = sym_eigen(s);
  if (spectrum_deficient) *spectrum_deficient = false;
  Matrix g(s.rows(), rank);
  for (std::size_t k = 0; k < rank; ++k) {
    double lambda = e.values[k];
    if (lambda < 0.0) {
      lambda = 0.0;
      if (spectrum_deficient) *spectrum_deficient = true;
    }
    const double scale = std::sqrt(lambda);
    for (std::size_t i = 0; i < s.rows(); ++i) g(i, k) = scale * e.vectors(i, k);
  }
  return g;
}

Svd svd(const Matrix& m) {
  const std::size_t p = m.rows();
  const std::size_t q = m.cols();
  const std::size_t k = std::min(p, q);

  const SymEigen e = sym_eigen(m.transpose() * m);  // q x q
  Svd out;
  out.v = e.vectors;
  out.singular_values.resize(k);
  for (std::size_t i = 0; i < k; ++i)
    out.singular_values[i] = std::sqrt(std::max(e.values[i], 0.0));

  const double sigma_max = out.singular_values.empty() ? 0.0 : out.singular_values[0];
  const double tiny = 1e-12 * std::max(1.0, sigma_max);

  // u_i = M v_i / sigma_i where well defined; basis completion elsewhere.
  out.u = Matrix(p, p);
  std::size_t filled = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (out.singular_values[i] <= tiny) break;
    for (std::size_t r = 0; r < p; ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < q; ++c) s += m(r, c) * out.v(c, i);
      out.u(r, i) = s / out.singular_values[i];
    }
    ++filled;
  }
  for (std::size_t seed = 0; filled < p && seed < p; ++seed) {
    // try coordinate vector e_seed, keep it if independent of earlier columns
    Matrix trial = out.u;
    trial(seed, filled) = 1.0;
    for (std::size_t j = 0; j < filled; ++j) {
      double dot = trial(seed, j);
      for (std::size_t r = 0; r < p; ++r) trial(r, filled) -= dot * trial(r, j);
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < p; ++r) norm += trial(r, filled) * trial(r, filled);
    if (std::sqrt(norm) > 1e-3) {
      out.u = trial;
      ++filled;
    }
  }
  orthonormalize_columns(out.u);
  return out;
}

}  // namespace corrbiplot
