#pragma once

#include <string>

#include "corrbiplot/biplot.hpp"

namespace corrbiplot {

struct SvgOptions {
  int width = 640;
  int height = 640;
  std::string title;  // defaults to "<method> biplot, RMSE = <value>"
};

/// Standalone SVG document for a biplot scene. Byte-deterministic for a fixed
/// scene and options.
std::string render_svg(const BiplotScene& scene, const SvgOptions& options = {});

}  // namespace corrbiplot
