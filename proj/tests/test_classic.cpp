#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "corrbiplot/classic.hpp"
#include "corrbiplot/fitstats.hpp"
#include "corrbiplot/linalg.hpp"
#include "helpers.hpp"

using namespace corrbiplot;

TEST_CASE("pca fit structure") {
  const auto r = builtin_dataset("goblets");
  const Fit fit = pca_fit(r, 2);
  CHECK(fit.method == Method::pca);
  CHECK(fit.symmetric_factors());
  CHECK(fit.delta == 0.0);
  CHECK(fit.q.empty());
  // fitted is exactly G G'
  CHECK(max_abs(fit.fitted - mult_abt(fit.g, fit.g)) == 0.0);
  // residual is R - fitted by construction
  CHECK(max_abs(fit.residual - (r.values - fit.fitted)) == 0.0);
  // diagonal is part of the reported error
  bool diag = true;
  for (std::size_t i = 0; i < r.size(); ++i) diag = diag && fit.weights.values(i, i) == 1.0;
  CHECK(diag);
}

TEST_CASE("pca at full rank on a PSD matrix is exact") {
  std::mt19937 rng(5);
  const CorrelationMatrix r = testutil::random_correlation(rng, 4);
  const Fit fit = pca_fit(r, 4);
  CHECK(max_abs(fit.residual) < 1e-10);
}

TEST_CASE("svd fits reconstruct their centering margins") {
  const auto r = builtin_dataset("milk");

  SUBCASE("overall") {
    const Fit fit = svd_fit(r, 2, CenterMode::overall);
    CHECK(fit.delta == doctest::Approx(grand_mean(r.values)).epsilon(1e-15));
    CHECK(fit.q.empty());
    CHECK(fit.b.has_value());
  }
  SUBCASE("column") {
    const Fit fit = svd_fit(r, 2, CenterMode::column);
    CHECK(fit.delta == 0.0);
    CHECK(fit.q == col_means(r.values));
  }
  SUBCASE("double") {
    const Fit fit = svd_fit(r, 2, CenterMode::double_centered);
    CHECK(fit.delta == doctest::Approx(-grand_mean(r.values)).epsilon(1e-15));
    CHECK(fit.q == col_means(r.values));
    CHECK(fit.prow == row_means(r.values));
  }
}

// Oracle: the SVD truncation minimizes the unweighted error on the centered
// matrix, so no random rank-2 competitor can beat it there.
TEST_CASE("svd truncation optimality on the centered matrix") {
  std::mt19937 rng(17);
  std::normal_distribution<double> gauss;
  const auto r = builtin_dataset("goblets");
  const Fit fit = svd_fit(r, 2, CenterMode::double_centered);

  const Matrix centered =
      r.values - assemble_fitted(r.size(), fit.delta, fit.q, fit.prow, Matrix(r.size(), 2),
                                 nullptr);
  const double best = frobenius_norm(centered - mult_abt(fit.g, *fit.b));
  for (int k = 0; k < 50; ++k) {
    Matrix a = fit.g, b = *fit.b;
    for (double& x : a.data()) x += 0.02 * gauss(rng);
    for (double& x : b.data()) x += 0.02 * gauss(rng);
    CHECK(frobenius_norm(centered - mult_abt(a, b)) >= best - 1e-12);
  }
}

TEST_CASE("double-centered svd is exact at rank p-1") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    const CorrelationMatrix r = testutil::random_correlation(rng, 3);
    const Fit fit = svd_fit(r, 2, CenterMode::double_centered);
    CHECK(max_abs(fit.residual) < 1e-10);
  }
}

TEST_CASE("pfa fit") {
  const auto r = builtin_dataset("goblets");
  const Fit fit = pfa_fit(r, 2);
  CHECK(fit.converged);
  CHECK(fit.iterations >= 1);

  // communalities stay inside [0, 1]
  for (std::size_t i = 0; i < r.size(); ++i) {
    double h = 0.0;
    for (std::size_t k = 0; k < 2; ++k) h += fit.g(i, k) * fit.g(i, k);
    CHECK(h >= 0.0);
    CHECK(h <= 1.0 + 1e-12);
  }

  // fixed point: G is the truncated factor of R with communalities in the diagonal
  Matrix s = r.values;
  for (std::size_t i = 0; i < r.size(); ++i) {
    double h = 0.0;
    for (std::size_t k = 0; k < 2; ++k) h += fit.g(i, k) * fit.g(i, k);
    s(i, i) = h;
  }
  const Matrix g2 = truncated_symmetric_factor(s, 2);
  CHECK(max_abs(g2 - fit.g) < 1e-6);

  // diagonal excluded from the report
  for (std::size_t i = 0; i < r.size(); ++i) CHECK(fit.weights.values(i, i) == 0.0);
}

TEST_CASE("rank validation") {
  const auto r = builtin_dataset("milk");
  CHECK_THROWS_AS(pca_fit(r, 7), Error);
  CHECK_THROWS_AS(svd_fit(r, 9, CenterMode::overall), Error);
  CHECK_THROWS_AS(pfa_fit(r, 7), Error);
}

TEST_CASE("closed-form overall goodness of fit versus the published grid") {
  struct Row {
    const char* data;
    double pca, svd_o, svd_c, svd_dc;
  };
  // tight tolerance: nothing here iterates
  const Row rows[] = {
      {"goblets", 0.0696, 0.0749, 0.0440, 0.0210},
      {"milk", 0.1183, 0.0813, 0.0550, 0.0431},
      {"beans10", 0.1761, 0.1950, 0.1202, 0.0997},
  };
  for (const Row& row : rows) {
    const auto r = builtin_dataset(row.data);
    CHECK(std::fabs(make_report(pca_fit(r, 2)).overall_rmse - row.pca) < 0.0005);
    CHECK(std::fabs(make_report(svd_fit(r, 2, CenterMode::overall)).overall_rmse - row.svd_o) < 0.0005);
    CHECK(std::fabs(make_report(svd_fit(r, 2, CenterMode::column)).overall_rmse - row.svd_c) < 0.0005);
    CHECK(std::fabs(make_report(svd_fit(r, 2, CenterMode::double_centered)).overall_rmse - row.svd_dc) < 0.0005);
  }
  CHECK(std::fabs(make_report(pca_fit(builtin_dataset("beans16"), 2)).overall_rmse - 0.1336) < 0.0005);
}
