#pragma once

#include <span>
#include <string>
#include <vector>

#include "srgkit/srg.hpp"

namespace srgkit {

/// A region boundary drawn behind the points: a circle centered on the real
/// axis, or a vertical line at a fixed real part.
struct RegionOverlay {
  enum class Kind { Circle, VerticalLine };
  Kind kind = Kind::Circle;
  double center_re = 0.0;
  double radius = 0.0;
  double line_re = 0.0;
  std::string label;
  std::string color = "#555555";
  bool dashed = false;

  static RegionOverlay circle(double center_re, double radius,
                              std::string label, std::string color = "#555555",
                              bool dashed = false);
  static RegionOverlay vline(double re, std::string label,
                             std::string color = "#555555",
                             bool dashed = false);
};

struct PlotStyle {
  double axis_range = 0.0;  // half-width of the square window; 0 = automatic
  double point_radius = 2.0;
  std::vector<std::string> cloud_colors = {"#1f77b4", "#d62728", "#2ca02c",
                                           "#9467bd"};
  std::string title;
};

/// Smallest window half-width covering every finite point and overlay, with
/// 8% slack, rounded up to the next tenth.
double auto_range(std::span<const SrgCloud> clouds,
                  std::span<const RegionOverlay> overlays);

/// Deterministic standalone SVG. Points are stored in the upper half-plane
/// and drawn together with their conjugate mirror; identical inputs give
/// identical bytes.
std::string render_svg(std::span<const SrgCloud> clouds,
                       std::span<const RegionOverlay> overlays,
                       const PlotStyle& style);

void write_svg(const std::string& path, std::span<const SrgCloud> clouds,
               std::span<const RegionOverlay> overlays, const PlotStyle& style);

}  // namespace srgkit
