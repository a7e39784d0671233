#include "corrbiplot/biplot.hpp"

#include <algorithm>
#include <cmath>

#include "corrbiplot/error.hpp"
#include "corrbiplot/fitstats.hpp"

namespace corrbiplot {

namespace {

constexpr double kDegenerate = 1e-8;  // threshold on g_j'g_j

void check_dims(const Fit& fit, std::pair<std::size_t, std::size_t> dims) {
  if (dims.first >= fit.rank || dims.second >= fit.rank || dims.first == dims.second)
    throw Error(Errc::dim_out_of_range, "display dimensions must be distinct and below the rank");
}

double squared_length(const Matrix& g, std::size_t j) {
  double s = 0.0;
  for (std::size_t k = 0; k < g.cols(); ++k) s += g(j, k) * g(j, k);
  return s;
}

std::vector<std::array<double, 2>> rows_at(const Matrix& g,
                                           std::pair<std::size_t, std::size_t> dims) {
  std::vector<std::array<double, 2>> out(g.rows());
  for (std::size_t j = 0; j < g.rows(); ++j)
    out[j] = {g(j, dims.first), g(j, dims.second)};
  return out;
}

int sign_of(double c) { return (c > 0.0) - (c < 0.0); }

// Marks along the axis vector of variable j: value c sits at scale(c) * axis_j,
// where scale(c) = (c - offset) / (axis_j'axis_j). The axis is the column
// vector (B when present, else G); the offset absorbs the fitted adjustments.
std::vector<TallyMark> marks_on_axis(const Matrix& axis, std::size_t j, double offset,
                                     const std::vector<double>& values,
                                     std::pair<std::size_t, std::size_t> dims) {
  const double len2 = squared_length(axis, j);
  if (len2 <= kDegenerate)
    throw Error(Errc::degenerate_vector, "variable vector too short to calibrate");
  std::vector<TallyMark> marks;
  marks.reserve(values.size());
  for (double c : values) {
    const double scale = (c - offset) / len2;
    TallyMark m;
    m.value = c;
    m.x = scale * axis(j, dims.first);
    m.y = scale * axis(j, dims.second);
    m.sign = sign_of(c);
    marks.push_back(m);
  }
  return marks;
}

std::vector<double> stick_values(double lo, double hi, double step) {
  std::vector<double> values;
  if (step <= 0.0) throw Error(Errc::invalid_argument, "tally step must be positive");
  for (double c = lo; c <= hi + 1e-12; c += step) values.push_back(std::fabs(c) < 1e-12 ? 0.0 : c);
  return values;
}

}  // namespace

std::vector<std::array<double, 2>> biplot_vectors(const Fit& fit,
                                                  std::pair<std::size_t, std::size_t> dims) {
  check_dims(fit, dims);
  return rows_at(fit.g, dims);
}

std::vector<std::optional<std::array<double, 2>>> zero_points(
    const Fit& fit, std::pair<std::size_t, std::size_t> dims) {
  check_dims(fit, dims);
  if (!fit.symmetric_factors())
    throw Error(Errc::invalid_argument, "zero points need a symmetric factorization");
  std::vector<std::optional<std::array<double, 2>>> points(fit.g.rows());
  for (std::size_t j = 0; j < fit.g.rows(); ++j) {
    const double len2 = squared_length(fit.g, j);
    if (len2 <= kDegenerate) continue;  // undefined: omitted, flagged by nullopt
    const double scale = -(fit.delta + fit.q_at(j)) / len2;
    points[j] = std::array<double, 2>{scale * fit.g(j, dims.first), scale * fit.g(j, dims.second)};
  }
  return points;
}

std::vector<TallyMark> tally_marks(const Fit& fit, const std::vector<double>& values,
                                   std::size_t variable,
                                   std::pair<std::size_t, std::size_t> dims) {
  check_dims(fit, dims);
  if (!fit.symmetric_factors())
    throw Error(Errc::invalid_argument, "tally sticks need a symmetric factorization");
  return marks_on_axis(fit.g, variable, fit.delta + fit.q_at(variable), values, dims);
}

double fitted_by_projection(const Fit& fit, std::size_t i, std::size_t j) {
  const Matrix& axis = fit.b ? *fit.b : fit.g;
  const double len2 = squared_length(axis, j);
  if (len2 <= kDegenerate)
    throw Error(Errc::degenerate_vector, "variable vector too short to project onto");
  // signed length of the projection of g_i onto the axis, then the inverse of
  // the mark mapping: reading = adjustments + (projection . axis)
  double dot = 0.0;
  for (std::size_t k = 0; k < fit.g.cols(); ++k) dot += fit.g(i, k) * axis(j, k);
  const double signed_pos = dot / std::sqrt(len2);
  return fit.delta + fit.q_at(j) + fit.prow_at(i) + signed_pos * std::sqrt(len2);
}

std::vector<TallyMark> calibrate_pair_axis(const Fit& dcfit, std::size_t i, std::size_t j,
                                           const std::vector<double>& values) {
  if (dcfit.method != Method::svd_double)
    throw Error(Errc::invalid_argument, "pair calibration applies to double-centered fits");
  const std::pair<std::size_t, std::size_t> dims{0, std::min<std::size_t>(1, dcfit.rank - 1)};
  // offset r_i. + r_.j - r_.. stored as prow_i + q_j + delta
  return marks_on_axis(*dcfit.b, j, dcfit.delta + dcfit.q_at(j) + dcfit.prow_at(i), values, dims);
}

double calibrated_reading(const Fit& dcfit, std::size_t i, std::size_t j) {
  if (dcfit.method != Method::svd_double)
    throw Error(Errc::invalid_argument, "pair calibration applies to double-centered fits");
  return fitted_by_projection(dcfit, i, j);
}

BiplotScene make_scene(const Fit& fit, const SceneOptions& options) {
  check_dims(fit, options.dims);
  const std::size_t p = fit.g.rows();

  BiplotScene scene;
  scene.labels = fit.labels;
  scene.method = method_name(fit.method);
  scene.vectors = rows_at(fit.g, options.dims);
  if (fit.b) scene.dual_vectors = rows_at(*fit.b, options.dims);

  scene.degenerate.resize(p);
  std::size_t alive = 0;
  for (std::size_t j = 0; j < p; ++j) {
    scene.degenerate[j] = squared_length(fit.g, j) <= kDegenerate;
    if (!scene.degenerate[j]) ++alive;
  }
  if (alive == 0) throw Error(Errc::degenerate_scene, "all variable vectors are degenerate");

  if (fit.symmetric_factors()) scene.zero_points = zero_points(fit, options.dims);
  else scene.zero_points.assign(p, std::nullopt);

  // Readings at full rank and at the displayed rank, so the display error is
  // inspectable.
  scene.reading_full = fit.fitted;
  scene.reading_displayed = Matrix(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      const Matrix& bb = fit.b ? *fit.b : fit.g;
      double dot = fit.g(i, options.dims.first) * bb(j, options.dims.first) +
                   fit.g(i, options.dims.second) * bb(j, options.dims.second);
      scene.reading_displayed(i, j) = fit.delta + fit.q_at(j) + fit.prow_at(i) + dot;
    }

  scene.rmse = rmse(fit.residual, fit.weights);

  scene.tallies.resize(p);
  if (fit.symmetric_factors()) {
    for (std::size_t j = 0; j < p; ++j) {
      if (scene.degenerate[j]) continue;
      std::vector<double> values;
      const auto custom =
          std::find_if(options.sticks.begin(), options.sticks.end(),
                       [&](const StickSpec& s) { return s.label == fit.labels[j]; });
      if (custom != options.sticks.end())
        values = stick_values(custom->lo, custom->hi, custom->step);
      else
        values = stick_values(-1.0, 1.0, options.tally_step);
      scene.tallies[j] = tally_marks(fit, values, j, options.dims);
    }
  }

  // bounds: cover the origin, every vector, zero point, and unclipped mark;
  // marks beyond twice the vector span are clipped instead of stretching the
  // frame.
  double lim = 0.0;
  for (const auto& v : scene.vectors) lim = std::max({lim, std::fabs(v[0]), std::fabs(v[1])});
  if (scene.dual_vectors)
    for (const auto& v : *scene.dual_vectors)
      lim = std::max({lim, std::fabs(v[0]), std::fabs(v[1])});
  for (const auto& z : scene.zero_points)
    if (z) lim = std::max({lim, std::fabs((*z)[0]), std::fabs((*z)[1])});
  if (lim <= 0.0) lim = 1.0;
  const double frame = 2.0 * lim;
  for (auto& stick : scene.tallies)
    for (TallyMark& m : stick)
      if (std::fabs(m.x) > frame || std::fabs(m.y) > frame) m.clipped = true;
  double reach = lim;
  for (const auto& stick : scene.tallies)
    for (const TallyMark& m : stick)
      if (!m.clipped) reach = std::max({reach, std::fabs(m.x), std::fabs(m.y)});
  const double pad = 1.1 * reach;
  scene.xmin = scene.ymin = -pad;
  scene.xmax = scene.ymax = pad;
  return scene;
}

}  // namespace corrbiplot
