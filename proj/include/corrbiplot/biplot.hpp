#pragma once

#include <array>
#include <optional>
#include <utility>

#include "corrbiplot/fit.hpp"

namespace corrbiplot {

struct TallyMark {
  double value = 0.0;   // correlation the mark stands for
  double x = 0.0, y = 0.0;
  int sign = 0;         // sign of the correlation value
  bool clipped = false; // outside plot bounds (retained in the scene)
};

struct StickSpec {
  std::string label;
  double lo = -1.0, hi = 1.0, step = 0.2;
};

struct SceneOptions {
  std::pair<std::size_t, std::size_t> dims{0, 1};
  double tally_step = 0.2;
  std::vector<StickSpec> sticks;  // per-variable overrides
};

/// Render-ready biplot geometry.
struct BiplotScene {
  std::vector<std::string> labels;
  std::vector<std::array<double, 2>> vectors;
  std::optional<std::vector<std::array<double, 2>>> dual_vectors;
  std::vector<bool> degenerate;
  /// absent for asymmetric fits or degenerate vectors
  std::vector<std::optional<std::array<double, 2>>> zero_points;
  std::vector<std::vector<TallyMark>> tallies;
  /// full-rank and display-rank scalar-product readings of the fitted values
  Matrix reading_full;
  Matrix reading_displayed;
  double rmse = 0.0;
  std::string method;
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
};

/// Rows of G (and of B when present) restricted to the chosen dimensions.
std::vector<std::array<double, 2>> biplot_vectors(const Fit& fit,
                                                  std::pair<std::size_t, std::size_t> dims);

/// Zero-correlation point of each variable: -(delta + q_j)/(g_j'g_j) g_j,
/// projected to the chosen dims. Degenerate vectors give nullopt.
std::vector<std::optional<std::array<double, 2>>> zero_points(
    const Fit& fit, std::pair<std::size_t, std::size_t> dims = {0, 1});

/// Marks for the given correlation values along variable j's vector.
std::vector<TallyMark> tally_marks(const Fit& fit, const std::vector<double>& values,
                                   std::size_t variable,
                                   std::pair<std::size_t, std::size_t> dims = {0, 1});

/// Fitted correlation read through the projection of g_i onto g_j at full rank:
/// equals fit.fitted(i, j) exactly.
double fitted_by_projection(const Fit& fit, std::size_t i, std::size_t j);

/// Per-pair calibration of a double-centered biplot: mark for value c on
/// variable j's axis when variable i projects onto it.
std::vector<TallyMark> calibrate_pair_axis(const Fit& dcfit, std::size_t i, std::size_t j,
                                           const std::vector<double>& values);

/// Reading of r_ij recovered through the pair-calibrated axis geometry.
double calibrated_reading(const Fit& dcfit, std::size_t i, std::size_t j);

BiplotScene make_scene(const Fit& fit, const SceneOptions& options = {});

}  // namespace corrbiplot
