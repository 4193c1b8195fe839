#include "srgkit/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace srgkit {

namespace {

constexpr double kCanvas = 560.0;
constexpr double kMargin = 40.0;
constexpr double kInner = kCanvas - 2.0 * kMargin;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

struct Mapper {
  double range;
  double to_x(double re) const {
    return kMargin + (re + range) / (2.0 * range) * kInner;
  }
  double to_y(double im) const {
    return kMargin + (range - im) / (2.0 * range) * kInner;
  }
};

}  // namespace

RegionOverlay RegionOverlay::circle(double center_re, double radius,
                                    std::string label, std::string color,
                                    bool dashed) {
  RegionOverlay o;
  o.kind = Kind::Circle;
  o.center_re = center_re;
  o.radius = radius;
  o.label = std::move(label);
  o.color = std::move(color);
  o.dashed = dashed;
  return o;
}

RegionOverlay RegionOverlay::vline(double re, std::string label,
                                   std::string color, bool dashed) {
  RegionOverlay o;
  o.kind = Kind::VerticalLine;
  o.line_re = re;
  o.label = std::move(label);
  o.color = std::move(color);
  o.dashed = dashed;
  return o;
}

double auto_range(std::span<const SrgCloud> clouds,
                  std::span<const RegionOverlay> overlays) {
  double r = 0.0;
  for (const SrgCloud& cloud : clouds)
    for (const SrgPoint& p : cloud.points)
      if (!p.is_infinity) r = std::max(r, p.gain);
  for (const RegionOverlay& o : overlays) {
    if (o.kind == RegionOverlay::Kind::Circle)
      r = std::max(r, std::abs(o.center_re) + o.radius);
    else
      r = std::max(r, std::abs(o.line_re));
  }
  double padded = std::ceil(r * 1.08 * 10.0) / 10.0;
  return std::max(padded, 0.1);
}

std::string render_svg(std::span<const SrgCloud> clouds,
                       std::span<const RegionOverlay> overlays,
                       const PlotStyle& style) {
  if (clouds.empty()) throw std::invalid_argument("nothing to plot");
  if (style.axis_range < 0.0 || !std::isfinite(style.axis_range))
    throw std::invalid_argument("axis range must be finite and nonnegative");

  Mapper map{style.axis_range > 0.0 ? style.axis_range
                                    : auto_range(clouds, overlays)};

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"560\" "
         "height=\"560\" viewBox=\"0 0 560 560\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"560\" height=\"560\" "
         "fill=\"#ffffff\"/>\n";
  svg += "<rect x=\"" + fmt(kMargin) + "\" y=\"" + fmt(kMargin) +
         "\" width=\"" + fmt(kInner) + "\" height=\"" + fmt(kInner) +
         "\" fill=\"none\" stroke=\"#222222\" stroke-width=\"1\"/>\n";

  // axes through the origin
  svg += "<line x1=\"" + fmt(map.to_x(-map.range)) + "\" y1=\"" +
         fmt(map.to_y(0.0)) + "\" x2=\"" + fmt(map.to_x(map.range)) +
         "\" y2=\"" + fmt(map.to_y(0.0)) +
         "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + fmt(map.to_x(0.0)) + "\" y1=\"" +
         fmt(map.to_y(-map.range)) + "\" x2=\"" + fmt(map.to_x(0.0)) +
         "\" y2=\"" + fmt(map.to_y(map.range)) +
         "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";

  for (const RegionOverlay& o : overlays) {
    std::string dash = o.dashed ? " stroke-dasharray=\"6 4\"" : "";
    if (o.kind == RegionOverlay::Kind::Circle) {
      svg += "<circle cx=\"" + fmt(map.to_x(o.center_re)) + "\" cy=\"" +
             fmt(map.to_y(0.0)) + "\" r=\"" +
             fmt(o.radius / (2.0 * map.range) * kInner) +
             "\" fill=\"none\" stroke=\"" + o.color +
             "\" stroke-width=\"1.5\"" + dash + "/>\n";
    } else {
      svg += "<line x1=\"" + fmt(map.to_x(o.line_re)) + "\" y1=\"" +
             fmt(kMargin) + "\" x2=\"" + fmt(map.to_x(o.line_re)) +
             "\" y2=\"" + fmt(kMargin + kInner) + "\" stroke=\"" + o.color +
             "\" stroke-width=\"1.5\"" + dash + "/>\n";
    }
  }

  std::size_t infinities = 0;
  for (std::size_t c = 0; c < clouds.size(); ++c) {
    const std::string& color =
        style.cloud_colors[c % style.cloud_colors.size()];
    svg += "<g fill=\"" + color + "\" fill-opacity=\"0.6\">\n";
    for (const SrgPoint& p : clouds[c].points) {
      if (p.is_infinity) {
        ++infinities;
        continue;
      }
      double re = p.re();
      double im = p.im();
      if (std::abs(re) > map.range || std::abs(im) > map.range) continue;
      svg += "<circle cx=\"" + fmt(map.to_x(re)) + "\" cy=\"" +
             fmt(map.to_y(im)) + "\" r=\"" + fmt(style.point_radius) +
             "\"/>\n";
      if (im != 0.0)
        svg += "<circle cx=\"" + fmt(map.to_x(re)) + "\" cy=\"" +
               fmt(map.to_y(-im)) + "\" r=\"" + fmt(style.point_radius) +
               "\"/>\n";
    }
    svg += "</g>\n";
  }

  double text_y = kMargin - 22.0;
  if (!style.title.empty()) {
    svg += "<text x=\"" + fmt(kMargin) + "\" y=\"" + fmt(text_y + 6.0) +
           "\" font-family=\"monospace\" font-size=\"13\" "
           "fill=\"#222222\">" +
           style.title + "</text>\n";
  }
  double legend_y = kMargin + 16.0;
  for (const RegionOverlay& o : overlays) {
    if (o.label.empty()) continue;
    svg += "<text x=\"" + fmt(kMargin + 8.0) + "\" y=\"" + fmt(legend_y) +
           "\" font-family=\"monospace\" font-size=\"12\" fill=\"" + o.color +
           "\">" + o.label + "</text>\n";
    legend_y += 16.0;
  }
  if (infinities > 0) {
    svg += "<text x=\"" + fmt(kMargin + 8.0) + "\" y=\"" + fmt(legend_y) +
           "\" font-family=\"monospace\" font-size=\"12\" "
           "fill=\"#222222\">points at infinity: " +
           std::to_string(infinities) + "</text>\n";
  }
  svg += "<text x=\"" + fmt(kMargin) + "\" y=\"" + fmt(kCanvas - 14.0) +
         "\" font-family=\"monospace\" font-size=\"12\" "
         "fill=\"#222222\">window [-" +
         fmt(map.range) + ", " + fmt(map.range) + "]^2</text>\n";
  svg += "</svg>\n";
  return svg;
}

void write_svg(const std::string& path, std::span<const SrgCloud> clouds,
               std::span<const RegionOverlay> overlays,
               const PlotStyle& style) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << render_svg(clouds, overlays, style);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace srgkit
