#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "corrbiplot/classic.hpp"
#include "corrbiplot/fitstats.hpp"
#include "helpers.hpp"

using namespace corrbiplot;

TEST_CASE("rmse on a hand-computed 2x2 case") {
  Matrix e(2, 2);
  e(0, 0) = 0.0;
  e(0, 1) = e(1, 0) = 0.3;
  e(1, 1) = 0.4;

  // all weights: sqrt((0 + 0.09 + 0.09 + 0.16) / 4)
  CHECK(rmse(e, unit_weights(2)) == doctest::Approx(std::sqrt(0.34 / 4.0)).epsilon(1e-15));
  // diagonal excluded: sqrt((0.09 + 0.09) / 2)
  CHECK(rmse(e, offdiag_weights(2)) == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("per-variable statistic counts the diagonal entry once") {
  Matrix e(2, 2);
  e(0, 0) = 0.1;
  e(0, 1) = e(1, 0) = 0.2;
  e(1, 1) = 0.0;
  const Vector z = rmse_per_variable(e, unit_weights(2));
  // variable 0: (w00 e00^2 counted once) + e01^2 + e10^2 over 2*2 - 1 weights
  CHECK(z[0] == doctest::Approx(std::sqrt((0.01 + 0.04 + 0.04) / 3.0)).epsilon(1e-15));
  CHECK(z[1] == doctest::Approx(std::sqrt((0.04 + 0.04) / 3.0)).epsilon(1e-15));
}

TEST_CASE("aggregation identity holds exactly for random residuals and weights") {
  std::mt19937 rng(37);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t p = 2 + trial % 7;
    Matrix e = testutil::random_data(rng, p, p);  // asymmetric residuals allowed
    Matrix wv(p, p);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = i; j < p; ++j) wv(i, j) = wv(j, i) = unif(rng);
    const WeightMatrix w{wv};
    CHECK(check_aggregation(e, w) < 1e-12);
  }
}

TEST_CASE("aggregation identity simplifies when the diagonal is unweighted") {
  // with zero diagonal weights the overall statistic is the weighted mean of
  // the per-variable ones: RMSE^2 * sum w = sum_i z_i^2 w_i.
  std::mt19937 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t p = 3 + trial % 5;
    const Matrix e = testutil::random_data(rng, p, p);
    const WeightMatrix w = offdiag_weights(p);
    const Vector z = rmse_per_variable(e, w);
    double total = 0.0, num = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      double wi = 0.0;
      for (std::size_t j = 0; j < p; ++j) wi += w.values(i, j);
      num += z[i] * z[i] * wi;
      total += wi;
    }
    CHECK(rmse(e, w) == doctest::Approx(std::sqrt(num / total)).epsilon(1e-12));
  }
}

TEST_CASE("report carries the fit's own weighting convention") {
  const auto r = builtin_dataset("goblets");
  const FitReport with_diag = make_report(pca_fit(r, 2));
  CHECK(with_diag.diagonal_included);
  CHECK(with_diag.labels == r.labels);
  CHECK(with_diag.per_variable.size() == 6);

  const FitReport without = make_report(pfa_fit(r, 2));
  CHECK(!without.diagonal_included);
  CHECK(without.overall_rmse < with_diag.overall_rmse);
}

TEST_CASE("zero residual gives zero statistics") {
  const Matrix e(4, 4, 0.0);
  CHECK(rmse(e, unit_weights(4)) == 0.0);
  for (double z : rmse_per_variable(e, offdiag_weights(4))) CHECK(z == 0.0);
}
