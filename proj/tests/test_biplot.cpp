#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "corrbiplot/biplot.hpp"
#include "corrbiplot/classic.hpp"
#include "corrbiplot/svg.hpp"
#include "corrbiplot/wals.hpp"
#include "helpers.hpp"

using namespace corrbiplot;

namespace {

Fit delta_fit(const CorrelationMatrix& r) {
  WalsConfig cfg;
  cfg.mode = WalsMode::delta;
  return wals_fit(r, offdiag_weights(r.size()), cfg);
}

double norm2(const Fit& fit, std::size_t j) {
  double s = 0.0;
  for (std::size_t k = 0; k < fit.g.cols(); ++k) s += fit.g(j, k) * fit.g(j, k);
  return s;
}

}  // namespace

TEST_CASE("zero point solves the fitted-correlation-equals-zero equation") {
  // oracle: walk along the vector direction and find the root of
  // delta + q_j + t * g_j'g_j = 0 numerically, then compare positions
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const CorrelationMatrix r = testutil::random_correlation(rng, 4);
    const Fit fit = delta_fit(r);
    const auto zp = zero_points(fit);
    for (std::size_t j = 0; j < 4; ++j) {
      if (!zp[j]) continue;
      // bisection on f(t) = delta + t * ||g_j||^2 along unit steps of g_j
      double lo = -100.0, hi = 100.0;
      auto f = [&](double t) { return fit.delta + t * norm2(fit, j); };
      REQUIRE(f(lo) * f(hi) <= 0.0);
      for (int it = 0; it < 200; ++it) {
        const double mid = (lo + hi) / 2.0;
        if (f(lo) * f(mid) <= 0.0) hi = mid;
        else lo = mid;
      }
      const double t = (lo + hi) / 2.0;
      CHECK((*zp[j])[0] == doctest::Approx(t * fit.g(j, 0)).epsilon(1e-12).scale(1.0));
      CHECK((*zp[j])[1] == doctest::Approx(t * fit.g(j, 1)).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("goblets delta fit puts all zero points on the positive side") {
  const Fit fit = delta_fit(builtin_dataset("goblets"));
  CHECK(fit.delta < 0.0);  // approximately -0.71
  const auto zp = zero_points(fit);
  for (std::size_t j = 0; j < 6; ++j) {
    REQUIRE(zp[j].has_value());
    // -(delta)/||g||^2 > 0: the zero point lies along +g_j
    const double dot = (*zp[j])[0] * fit.g(j, 0) + (*zp[j])[1] * fit.g(j, 1);
    CHECK(dot > 0.0);
  }
}

TEST_CASE("tally marks are collinear and equally spaced") {
  const Fit fit = delta_fit(builtin_dataset("milk"));
  for (std::size_t j = 0; j < 6; ++j) {
    std::vector<double> values;
    for (int k = -5; k <= 5; ++k) values.push_back(0.2 * k);
    const auto marks = tally_marks(fit, values, j);
    REQUIRE(marks.size() == 11);

    const double gx = fit.g(j, 0), gy = fit.g(j, 1);
    const double glen = std::sqrt(gx * gx + gy * gy);
    for (const auto& m : marks) {
      // collinear with the vector through the origin
      CHECK(std::fabs(m.x * gy - m.y * gx) < 1e-10);
    }
    // spacing law: distance between consecutive marks is step / ||g_j||
    for (std::size_t i = 1; i < marks.size(); ++i) {
      const double dx = marks[i].x - marks[i - 1].x;
      const double dy = marks[i].y - marks[i - 1].y;
      CHECK(std::sqrt(dx * dx + dy * dy) == doctest::Approx(0.2 / glen).epsilon(1e-10));
    }
    // signs drive coloring
    CHECK(marks.front().sign == -1);
    CHECK(marks[5].sign == 0);
    CHECK(marks.back().sign == 1);
  }
}

TEST_CASE("the mark for the adjusted value sits at the origin") {
  const Fit fit = delta_fit(builtin_dataset("goblets"));
  const auto marks = tally_marks(fit, {fit.delta + fit.q_at(2)}, 2);
  CHECK(std::fabs(marks[0].x) < 1e-14);
  CHECK(std::fabs(marks[0].y) < 1e-14);
}

TEST_CASE("projection reading reproduces the fitted matrix at full rank") {
  std::mt19937 rng(17);
  const CorrelationMatrix r = testutil::random_correlation(rng, 5);
  WalsConfig cfg;
  cfg.mode = WalsMode::q_sym;
  cfg.max_outer = 40;
  const Fit fit = wals_fit(r, offdiag_weights(5), cfg);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      CHECK(fitted_by_projection(fit, i, j) ==
            doctest::Approx(fit.fitted(i, j)).epsilon(1e-12).scale(1.0));

  // the asymmetry of the readings is exactly the adjustment difference
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      CHECK(std::fabs(fitted_by_projection(fit, i, j) - fitted_by_projection(fit, j, i)) ==
            doctest::Approx(std::fabs(fit.q[j] - fit.q[i])).epsilon(1e-10).scale(1.0));
}

TEST_CASE("pair calibration recovers every correlation of a 3x3 exactly") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const CorrelationMatrix r = testutil::random_correlation(rng, 3);
    const Fit fit = svd_fit(r, 2, CenterMode::double_centered);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        if (i == j) continue;
        CHECK(calibrated_reading(fit, i, j) ==
              doctest::Approx(r.values(i, j)).epsilon(1e-8).scale(1.0));
      }
  }
}

TEST_CASE("pair calibration marks depend on the projecting variable") {
  const auto r = builtin_dataset("goblets");
  const Fit fit = svd_fit(r, 2, CenterMode::double_centered);
  const auto from_0 = calibrate_pair_axis(fit, 0, 3, {0.2});
  const auto from_1 = calibrate_pair_axis(fit, 1, 3, {0.2});
  // different row margins shift the scale along the same axis
  const double d = std::hypot(from_0[0].x - from_1[0].x, from_0[0].y - from_1[0].y);
  CHECK(d > 1e-6);
}

TEST_CASE("equicorrelation input collapses all pair scales onto one") {
  const auto r = equicorrelation(3, 0.3);
  const Fit fit = svd_fit(r, 2, CenterMode::double_centered);
  for (std::size_t j = 0; j < 3; ++j) {
    std::optional<TallyMark> first;
    for (std::size_t i = 0; i < 3; ++i) {
      if (i == j) continue;
      const auto marks = calibrate_pair_axis(fit, i, j, {0.1});
      if (!first) first = marks[0];
      CHECK(marks[0].x == doctest::Approx(first->x).epsilon(1e-10).scale(1.0));
      CHECK(marks[0].y == doctest::Approx(first->y).epsilon(1e-10).scale(1.0));
    }
  }
}

TEST_CASE("pair calibration refuses non-double-centered fits") {
  const Fit fit = pca_fit(builtin_dataset("milk"), 2);
  CHECK_THROWS_AS(calibrate_pair_axis(fit, 0, 1, {0.1}), Error);
}

TEST_CASE("degenerate vectors") {
  // an equicorrelation matrix double-centers to (1 - r) H, whose
  // symmetric rank-2 factor leaves no useful direction for some p; instead,
  // fabricate a fit with one zero row in G
  Fit fit = pca_fit(builtin_dataset("goblets"), 2);
  for (std::size_t k = 0; k < 2; ++k) fit.g(1, k) = 0.0;
  CHECK_THROWS_AS(tally_marks(fit, {0.2}, 1), Error);
  const auto zp = zero_points(fit);
  CHECK(!zp[1].has_value());  // omitted, not an error
  for (std::size_t j = 0; j < 6; ++j)
    if (j != 1) CHECK(zp[j].has_value());

  const BiplotScene scene = make_scene(fit);
  CHECK(scene.degenerate[1]);
  CHECK(scene.tallies[1].empty());

  // a scene where every vector dies cannot be built
  for (std::size_t j = 0; j < 6; ++j)
    for (std::size_t k = 0; k < 2; ++k) fit.g(j, k) = 0.0;
  CHECK_THROWS_AS(make_scene(fit), Error);
}

TEST_CASE("scene assembly") {
  const Fit fit = delta_fit(builtin_dataset("goblets"));
  SceneOptions opt;
  opt.sticks.push_back({"BW", 0.75, 0.85, 0.05});
  const BiplotScene scene = make_scene(fit, opt);

  CHECK(scene.labels == fit.labels);
  CHECK(scene.method == "wals-delta");
  CHECK(!scene.dual_vectors.has_value());
  CHECK(scene.rmse > 0.0);

  // default sticks carry 11 marks; the custom one 3
  for (std::size_t j = 0; j < 6; ++j) {
    if (fit.labels[j] == "BW") CHECK(scene.tallies[j].size() == 3);
    else CHECK(scene.tallies[j].size() == 11);
  }

  // bounds contain every vector and zero point
  for (const auto& v : scene.vectors) {
    CHECK(v[0] >= scene.xmin);
    CHECK(v[0] <= scene.xmax);
    CHECK(v[1] >= scene.ymin);
    CHECK(v[1] <= scene.ymax);
  }

  // displayed readings at rank 2 coincide with the full-rank ones here
  CHECK(max_abs(scene.reading_full - scene.reading_displayed) < 1e-12);
}

TEST_CASE("display dimension validation") {
  const Fit fit = pca_fit(builtin_dataset("milk"), 2);
  CHECK_THROWS_AS(biplot_vectors(fit, {0, 2}), Error);
  CHECK_THROWS_AS(biplot_vectors(fit, {1, 1}), Error);
  CHECK_NOTHROW(biplot_vectors(fit, {1, 0}));
}

TEST_CASE("custom stick spanning (0.63, 0.68) with 0.01 increments gives 6 marks") {
  const Fit fit = delta_fit(builtin_dataset("milk"));
  SceneOptions opt;
  opt.sticks.push_back({"Yield", 0.63, 0.68, 0.01});
  const BiplotScene scene = make_scene(fit, opt);
  const std::size_t j = static_cast<std::size_t>(
      std::find(fit.labels.begin(), fit.labels.end(), "Yield") - fit.labels.begin());
  CHECK(scene.tallies[j].size() == 6);
}
