#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "srgkit/pairings.hpp"
#include "srgkit/vec.hpp"

namespace srgkit {

/// Draws points on the unit sphere of the norm behind `spec`. The first
/// `extreme_count(dim)` indices enumerate a deterministic extreme-point
/// family (ball vertices and facet representatives); later indices draw
/// random points. sample(seed, i, dim) depends only on its arguments, so
/// parallel chunks reproduce the serial sequence.
class UnitSphereSampler {
 public:
  explicit UnitSphereSampler(PairingKind spec) : spec_(spec) {}

  PairingKind spec() const { return spec_; }
  std::string id() const;
  std::size_t extreme_count(std::size_t dim) const;
  Vec sample(std::uint64_t seed, std::uint64_t index, std::size_t dim) const;

 private:
  Vec extreme(std::uint64_t index, std::size_t dim) const;
  Vec random_point(std::uint64_t seed, std::uint64_t index,
                   std::size_t dim) const;

  PairingKind spec_;
};

/// Draws (x1, x2) pairs whose differences probe an operator's graph.
/// Families: gaussian, laplace (sparse directions), sign vectors (max-norm
/// extremes), coordinate impulses, a four-way mix of those, and a bounded
/// value-range family for fixed-point maps. Pure in (seed, index, dim).
class IncrementSampler {
 public:
  static IncrementSampler gaussian();
  static IncrementSampler laplace();
  static IncrementSampler sign_vectors();
  static IncrementSampler impulses();
  static IncrementSampler mixed();
  static IncrementSampler value_range(double half_width);

  const std::string& id() const { return id_; }
  std::pair<Vec, Vec> sample_pair(std::uint64_t seed, std::uint64_t index,
                                  std::size_t dim) const;

 private:
  enum class Family { Gaussian, Laplace, Sign, Impulse, Mixed, ValueRange };

  IncrementSampler(Family family, std::string id, double half_width = 0.0)
      : family_(family), half_width_(half_width), id_(std::move(id)) {}

  Family family_;
  double half_width_;
  std::string id_;
};

}  // namespace srgkit
