#pragma once

#include <string>

#include "srgkit/srg.hpp"

namespace srgkit {

/// CSV layout, version "srg-cloud v1":
///   # srg-cloud v1
///   # spec: <l1|l2|linf-max|linf-min>
///   # side: <left|right>
///   # sampler: <id>
///   # n: <requested sample count>
///   # seed: <seed>
///   re,im,gain,phase_rad,is_infinity
///   <rows, doubles at 17 significant digits; infinity rows "inf,inf,inf,0,1">
/// 17-digit decimals round-trip doubles exactly, so parse(serialize(c))
/// restores every stored point bit for bit.
std::string serialize_cloud(const SrgCloud& cloud);
SrgCloud parse_cloud(const std::string& text);

void write_cloud(const std::string& path, const SrgCloud& cloud);
SrgCloud read_cloud(const std::string& path);

}  // namespace srgkit
