#include "beamtrim/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace beamtrim {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 50.0;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, a, b, c, d);
  return buf;
}

std::string header() {
  return fmt("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" font-family=\"sans-serif\" "
             "font-size=\"12\">\n<rect width=\"100%%\" height=\"100%%\" fill=\"white\"/>\n",
             kWidth, kHeight);
}

std::string line(double x0, double y0, double x1, double y1, const std::string& color) {
  return fmt("<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" ", x0, y0, x1, y1) + "stroke=\"" + color +
         "\"/>\n";
}

std::string text(double x, double y, const std::string& s, const char* anchor = "middle") {
  return fmt("<text x=\"%.2f\" y=\"%.2f\" ", x, y) + "text-anchor=\"" + anchor + "\">" + s + "</text>\n";
}

std::string axes(const std::string& xlabel, const std::string& ylabel) {
  std::string out;
  out += line(kMargin, kHeight - kMargin, kWidth - kMargin, kHeight - kMargin, "black");
  out += line(kMargin, kMargin, kMargin, kHeight - kMargin, "black");
  out += text(kWidth / 2.0, kHeight - 12.0, xlabel);
  out += fmt("<text x=\"14\" y=\"%.2f\" text-anchor=\"middle\" transform=\"rotate(-90 14 %.2f)\">", kHeight / 2.0,
             kHeight / 2.0) +
         ylabel + "</text>\n";
  return out;
}

}  // namespace

std::string trajectory_svg(const std::vector<NamedTrajectory>& trajectories) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const auto& t : trajectories) {
    for (const auto& p : t.trajectory.poses) {
      xmin = std::min(xmin, p.translation().x());
      xmax = std::max(xmax, p.translation().x());
      ymin = std::min(ymin, p.translation().y());
      ymax = std::max(ymax, p.translation().y());
    }
  }
  if (!std::isfinite(xmin)) xmin = xmax = ymin = ymax = 0.0;
  const double span = std::max({xmax - xmin, ymax - ymin, 1.0});
  const double scale = std::min(kWidth, kHeight) - 2.0 * kMargin;
  const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
  auto sx = [&](double x) { return kWidth / 2.0 + (x - cx) / span * scale; };
  auto sy = [&](double y) { return kHeight / 2.0 - (y - cy) / span * scale; };

  std::string out = header() + axes("x [m]", "y [m]");
  const double half_x = (kWidth / 2.0 - kMargin) / scale * span;
  out += text(kMargin, kHeight - kMargin + 16.0, fmt("%.1f", cx - half_x), "start");
  out += text(kWidth - kMargin, kHeight - kMargin + 16.0, fmt("%.1f", cx + half_x), "end");
  for (std::size_t i = 0; i < trajectories.size(); ++i) {
    const std::string color = kColors[i % std::size(kColors)];
    std::string pts;
    for (const auto& p : trajectories[i].trajectory.poses) {
      pts += fmt("%.2f,%.2f ", sx(p.translation().x()), sy(p.translation().y()));
    }
    out += "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"" + color + "\" points=\"" + pts + "\"/>\n";
    out += "<text x=\"" + fmt("%.0f", kWidth - kMargin - 100.0) + "\" y=\"" + fmt("%.0f", kMargin + 16.0 * i) +
           "\" fill=\"" + color + "\">" + trajectories[i].name + "</text>\n";
  }
  return out + "</svg>\n";
}

std::string bench_svg(const BenchReport& report) {
  double ymax = 1e-6;
  for (const auto& lv : report.levels) ymax = std::max({ymax, lv.dst.q3, lv.geom.q3});
  ymax *= 1.1;
  const double plot_h = kHeight - 2.0 * kMargin;
  auto sy = [&](double v) { return kHeight - kMargin - std::min(v, ymax) / ymax * plot_h; };
  const double slot = (kWidth - 2.0 * kMargin) / static_cast<double>(std::max<std::size_t>(report.levels.size(), 1));

  std::string out = header() + axes("noise level (l_t, l_r)", "translation error [m]");
  for (int k = 0; k <= 4; ++k) {
    const double v = ymax * k / 4.0;
    out += text(kMargin - 4.0, sy(v) + 4.0, fmt("%.3f", v), "end");
  }
  for (std::size_t i = 0; i < report.levels.size(); ++i) {
    const auto& lv = report.levels[i];
    const double x0 = kMargin + slot * static_cast<double>(i);
    const Quartiles* qs[2] = {&lv.dst, &lv.geom};
    for (int r = 0; r < 2; ++r) {
      const std::string color = kColors[r];
      const double bx = x0 + slot * (0.2 + 0.35 * r);
      const double bw = slot * 0.25;
      out += fmt("<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" ", bx, sy(qs[r]->q3), bw,
                 std::max(sy(qs[r]->q1) - sy(qs[r]->q3), 0.5)) +
             "fill=\"none\" stroke=\"" + color + "\"/>\n";
      out += line(bx, sy(qs[r]->median), bx + bw, sy(qs[r]->median), color);
    }
    out += text(x0 + slot / 2.0, kHeight - kMargin + 16.0,
                fmt("%.1f m, %.0f deg", lv.level.translation, lv.level.rotation * 180.0 / std::numbers::pi));
  }
  out += "<text x=\"" + fmt("%.0f", kWidth - kMargin - 60.0) + "\" y=\"" + fmt("%.0f", kMargin) + "\" fill=\"" +
         kColors[0] + "\">dst</text>\n";
  out += "<text x=\"" + fmt("%.0f", kWidth - kMargin - 60.0) + "\" y=\"" + fmt("%.0f", kMargin + 16.0) +
         "\" fill=\"" + kColors[1] + "\">geom</text>\n";
  return out + "</svg>\n";
}

}  // namespace beamtrim
