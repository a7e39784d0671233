#include "corrbiplot/svg.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "corrbiplot/error.hpp"

namespace corrbiplot {

namespace {

const char* kPositive = "#1f77b4";  // blue: positive correlations
const char* kNegative = "#d62728";  // red: negative correlations
const char* kNeutral = "#000000";
const char* kVector = "#000000";
const char* kDual = "#7f7f7f";
const char* kGrid = "#dddddd";

std::string num(double v, int decimals = 2) {
  char buf[64];
  if (std::fabs(v) < 5e-13) v = 0.0;  // avoid "-0.00"
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const BiplotScene& scene, const SvgOptions& options) {
  bool any = false;
  for (bool d : scene.degenerate) any = any || !d;
  if (!any) throw Error(Errc::degenerate_scene, "nothing to draw");

  const double w = options.width, h = options.height;
  const double margin = 40.0;
  const double sx = (w - 2 * margin) / (scene.xmax - scene.xmin);
  const double sy = (h - 2 * margin) / (scene.ymax - scene.ymin);
  auto px = [&](double x) { return margin + (x - scene.xmin) * sx; };
  auto py = [&](double y) { return h - margin - (y - scene.ymin) * sy; };

  std::string title = options.title;
  if (title.empty()) title = scene.method + " biplot, RMSE = " + num(scene.rmse, 4);

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\""
      << options.height << "\" viewBox=\"0 0 " << options.width << " " << options.height
      << "\">\n";
  out << "<title>" << escape(title) << "</title>\n";
  out << "<rect width=\"" << options.width << "\" height=\"" << options.height
      << "\" fill=\"#ffffff\"/>\n";

  // axis cross through the origin
  out << "<line x1=\"" << num(margin) << "\" y1=\"" << num(py(0)) << "\" x2=\"" << num(w - margin)
      << "\" y2=\"" << num(py(0)) << "\" stroke=\"" << kGrid << "\"/>\n";
  out << "<line x1=\"" << num(px(0)) << "\" y1=\"" << num(margin) << "\" x2=\"" << num(px(0))
      << "\" y2=\"" << num(h - margin) << "\" stroke=\"" << kGrid << "\"/>\n";

  out << "<text x=\"" << num(w / 2) << "\" y=\"" << num(margin / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" << escape(title)
      << "</text>\n";

  auto draw_vector = [&](double x, double y, const std::string& label, const char* color) {
    out << "<line x1=\"" << num(px(0)) << "\" y1=\"" << num(py(0)) << "\" x2=\"" << num(px(x))
        << "\" y2=\"" << num(py(y)) << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
    const double lx = px(x) + (x >= 0 ? 6 : -6);
    out << "<text x=\"" << num(lx) << "\" y=\"" << num(py(y) - 6) << "\" text-anchor=\""
        << (x >= 0 ? "start" : "end") << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\""
        << color << "\">" << escape(label) << "</text>\n";
  };

  for (std::size_t j = 0; j < scene.vectors.size(); ++j) {
    if (scene.degenerate[j]) {
      // too short for a stick: a labeled point only
      out << "<circle cx=\"" << num(px(scene.vectors[j][0])) << "\" cy=\""
          << num(py(scene.vectors[j][1])) << "\" r=\"2.5\" fill=\"" << kVector << "\"/>\n";
      out << "<text x=\"" << num(px(scene.vectors[j][0]) + 6) << "\" y=\""
          << num(py(scene.vectors[j][1]) - 6)
          << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(scene.labels[j])
          << "</text>\n";
      continue;
    }
    draw_vector(scene.vectors[j][0], scene.vectors[j][1], scene.labels[j], kVector);
  }
  if (scene.dual_vectors)
    for (std::size_t j = 0; j < scene.dual_vectors->size(); ++j)
      draw_vector((*scene.dual_vectors)[j][0], (*scene.dual_vectors)[j][1],
                  scene.labels[j] + "'", kDual);

  // tally sticks: colored segments by sign, dots at each mark value
  for (std::size_t j = 0; j < scene.tallies.size(); ++j) {
    for (const TallyMark& m : scene.tallies[j]) {
      if (m.clipped) continue;
      const char* color = m.sign > 0 ? kPositive : m.sign < 0 ? kNegative : kNeutral;
      out << "<circle cx=\"" << num(px(m.x)) << "\" cy=\"" << num(py(m.y))
          << "\" r=\"3\" fill=\"" << color << "\"><title>" << escape(scene.labels[j]) << " = "
          << num(m.value) << "</title></circle>\n";
    }
  }

  // zero-correlation points: open circles
  for (std::size_t j = 0; j < scene.zero_points.size(); ++j) {
    const auto& z = scene.zero_points[j];
    if (!z) continue;
    out << "<circle cx=\"" << num(px((*z)[0])) << "\" cy=\"" << num(py((*z)[1]))
        << "\" r=\"4.5\" fill=\"none\" stroke=\"" << kNeutral << "\" stroke-width=\"1.5\"><title>"
        << escape(scene.labels[j]) << " zero point</title></circle>\n";
  }

  out << "</svg>\n";
  return out.str();
}

}  // namespace corrbiplot
