#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "srgkit/rng.hpp"
#include "srgkit/vec.hpp"

namespace testsupport {

// Deterministic random vectors for property suites: standard normal entries,
// engine keyed by (seed, case index) so cases are independent and stable.
inline srgkit::Vec random_vec(std::uint64_t seed, std::uint64_t index,
                              std::size_t dim, std::uint64_t stream = 17) {
  auto eng = srgkit::engine_for(seed, stream, index);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> coords(dim);
  for (double& c : coords) c = normal(eng);
  return srgkit::Vec(std::move(coords));
}

// Nonzero variant: redraws on the (measure-zero, but cheap to guard) chance
// of an exact zero vector.
inline srgkit::Vec random_nonzero(std::uint64_t seed, std::uint64_t index,
                                  std::size_t dim,
                                  std::uint64_t stream = 17) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    srgkit::Vec x = random_vec(seed, index + (attempt << 32), dim, stream);
    if (!x.is_zero()) return x;
  }
}

inline std::size_t dim_for_case(std::uint64_t seed, std::uint64_t index,
                                std::size_t lo = 2, std::size_t hi = 8) {
  auto eng = srgkit::engine_for(seed, 99, index);
  std::uniform_int_distribution<std::size_t> pick(lo, hi);
  return pick(eng);
}

inline bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol;
}

inline bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * (1.0 + std::abs(a) + std::abs(b));
}

}  // namespace testsupport
