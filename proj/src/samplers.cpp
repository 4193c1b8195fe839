#include "srgkit/samplers.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "srgkit/rng.hpp"

namespace srgkit {

namespace {

// Facet enumeration is capped at this dimension; beyond it only the cheap
// extreme points and random draws are used.
constexpr std::size_t kEnumDim = 12;

// Off-vertex coordinates of the l1 facet representatives. Small enough to
// vanish against O(1) entries in any later sum, large enough to carry a
// sign, so the sign pairing evaluates to its facet-limit value there.
constexpr double kVertexSlack = 1e-18;

// Largest double below 1; damps a prefix of a sign vector so a chosen
// coordinate becomes the first max-norm peak without moving any later sum.
const double kBelowOne = std::nextafter(1.0, 0.0);

constexpr std::uint64_t kStreamSphere = 0x7370686572ULL;
constexpr std::uint64_t kStreamGauss = 0x696e633167ULL;
constexpr std::uint64_t kStreamLaplace = 0x696e63326cULL;
constexpr std::uint64_t kStreamSign = 0x696e633373ULL;
constexpr std::uint64_t kStreamImpulse = 0x696e633469ULL;
constexpr std::uint64_t kStreamRange = 0x696e633572ULL;

Vec sign_vector_from_bits(std::uint64_t bits, std::size_t dim) {
  std::vector<double> x(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    x[i] = (bits >> i) & 1ULL ? -1.0 : 1.0;
  }
  return Vec(std::move(x));
}

Vec draw_gaussian(std::mt19937_64& eng, std::size_t dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> x(dim);
  for (std::size_t i = 0; i < dim; ++i) x[i] = normal(eng);
  return Vec(std::move(x));
}

Vec draw_laplace(std::mt19937_64& eng, std::size_t dim) {
  std::exponential_distribution<double> expo(1.0);
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<double> x(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const double m = expo(eng);
    x[i] = coin(eng) ? m : -m;
  }
  return Vec(std::move(x));
}

Vec draw_box(std::mt19937_64& eng, std::size_t dim, double half_width) {
  std::uniform_real_distribution<double> box(-half_width, half_width);
  std::vector<double> x(dim);
  for (std::size_t i = 0; i < dim; ++i) x[i] = box(eng);
  return Vec(std::move(x));
}

}  // namespace

std::string UnitSphereSampler::id() const {
  switch (spec_) {
    case PairingKind::L2Dot:
      return "sphere-l2-gaussian";
    case PairingKind::L1Sign:
      return "sphere-l1-laplace+vertices";
    case PairingKind::LInfMax:
    case PairingKind::LInfMinIndex:
      return "sphere-linf-cube+signs";
  }
  return "sphere";
}

std::size_t UnitSphereSampler::extreme_count(std::size_t dim) const {
  switch (spec_) {
    case PairingKind::L2Dot:
      return 0;
    case PairingKind::L1Sign:
      return 2 * dim + (dim <= kEnumDim ? dim << dim : 0);
    case PairingKind::LInfMax:
    case PairingKind::LInfMinIndex:
      return dim <= kEnumDim ? dim << dim : 0;
  }
  return 0;
}

Vec UnitSphereSampler::extreme(std::uint64_t index, std::size_t dim) const {
  if (spec_ == PairingKind::L1Sign) {
    if (index < 2 * dim) {
      const std::size_t j = static_cast<std::size_t>(index >> 1);
      return (index & 1ULL ? -1.0 : 1.0) * Vec::unit(dim, j);
    }
    // Facet representative: full weight on vertex j, sign-carrying slack
    // elsewhere. The sign pairing is discontinuous at the vertex itself;
    // its supremum over a facet is the limit toward the vertex, and this
    // point evaluates to exactly that limit in double precision.
    const std::uint64_t k = index - 2 * dim;
    const std::size_t j = static_cast<std::size_t>(k >> dim);
    const std::uint64_t bits = k & ((1ULL << dim) - 1);
    Vec x = kVertexSlack * sign_vector_from_bits(bits, dim);
    x[j] = (bits >> j) & 1ULL ? -1.0 : 1.0;
    return x;
  }
  // Max-norm ball: sign vectors, then prefix-damped sign vectors that place
  // the first peak at each later coordinate (for the min-index pairing).
  const std::uint64_t signs = 1ULL << dim;
  if (index < signs) return sign_vector_from_bits(index, dim);
  const std::uint64_t k = index - signs;
  const std::size_t prefix = 1 + static_cast<std::size_t>(k >> dim);
  Vec x = sign_vector_from_bits(k & (signs - 1), dim);
  for (std::size_t i = 0; i < prefix && i < dim; ++i) x[i] *= kBelowOne;
  return x;
}

Vec UnitSphereSampler::random_point(std::uint64_t seed, std::uint64_t index,
                                    std::size_t dim) const {
  for (std::uint64_t attempt = 0;; ++attempt) {
    auto eng = engine_for(seed, kStreamSphere + attempt, index);
    switch (spec_) {
      case PairingKind::L2Dot: {
        const Vec x = draw_gaussian(eng, dim);
        const double n2 = norm(x, spec_);
        if (n2 > 0.0) return (1.0 / n2) * x;
        break;
      }
      case PairingKind::L1Sign: {
        const Vec x = draw_laplace(eng, dim);
        const double n1 = norm(x, spec_);
        if (n1 > 0.0) return (1.0 / n1) * x;
        break;
      }
      case PairingKind::LInfMax:
      case PairingKind::LInfMinIndex: {
        Vec x = draw_box(eng, dim, 1.0);
        std::uniform_int_distribution<std::size_t> pick(0, dim - 1);
        std::uniform_int_distribution<int> coin(0, 1);
        x[pick(eng)] = coin(eng) ? -1.0 : 1.0;
        return x;
      }
    }
  }
}

Vec UnitSphereSampler::sample(std::uint64_t seed, std::uint64_t index,
                              std::size_t dim) const {
  if (dim == 0) throw std::invalid_argument("UnitSphereSampler: dim 0");
  const std::size_t extremes = extreme_count(dim);
  if (index < extremes) return extreme(index, dim);
  return random_point(seed, index - extremes, dim);
}

IncrementSampler IncrementSampler::gaussian() {
  return {Family::Gaussian, "gaussian"};
}
IncrementSampler IncrementSampler::laplace() {
  return {Family::Laplace, "laplace"};
}
IncrementSampler IncrementSampler::sign_vectors() {
  return {Family::Sign, "sign"};
}
IncrementSampler IncrementSampler::impulses() {
  return {Family::Impulse, "impulse"};
}
IncrementSampler IncrementSampler::mixed() { return {Family::Mixed, "mixed"}; }
IncrementSampler IncrementSampler::value_range(double half_width) {
  if (!(half_width > 0.0)) {
    throw std::invalid_argument("value_range: half_width must be positive");
  }
  return {Family::ValueRange, "value-range", half_width};
}

std::pair<Vec, Vec> IncrementSampler::sample_pair(std::uint64_t seed,
                                                  std::uint64_t index,
                                                  std::size_t dim) const {
  if (dim == 0) throw std::invalid_argument("IncrementSampler: dim 0");
  const std::uint64_t pattern_mask =
      (1ULL << std::min<std::size_t>(dim, 20)) - 1;
  Family family = family_;
  std::uint64_t counter = index;
  if (family_ == Family::Mixed) {
    constexpr Family kCycle[4] = {Family::Gaussian, Family::Laplace,
                                  Family::Sign, Family::Impulse};
    family = kCycle[index % 4];
    counter = index / 4;
  }
  switch (family) {
    case Family::Gaussian: {
      auto eng = engine_for(seed, kStreamGauss, counter);
      Vec x1 = draw_gaussian(eng, dim);
      Vec x2 = draw_gaussian(eng, dim);
      return {std::move(x1), std::move(x2)};
    }
    case Family::Laplace: {
      auto eng = engine_for(seed, kStreamLaplace, counter);
      Vec x1 = draw_laplace(eng, dim);
      Vec x2 = draw_laplace(eng, dim);
      return {std::move(x1), std::move(x2)};
    }
    case Family::Sign: {
      auto eng = engine_for(seed, kStreamSign, counter);
      const Vec x2 = draw_gaussian(eng, dim);
      std::uniform_real_distribution<double> mag(0.5, 1.5);
      const Vec step =
          mag(eng) * sign_vector_from_bits(counter & pattern_mask, dim);
      return {x2 + step, x2};
    }
    case Family::Impulse: {
      auto eng = engine_for(seed, kStreamImpulse, counter);
      const Vec x2 = draw_gaussian(eng, dim);
      std::uniform_real_distribution<double> mag(0.5, 1.5);
      const std::size_t k = static_cast<std::size_t>(counter % dim);
      const double s = (counter / dim) % 2 ? -1.0 : 1.0;
      return {x2 + (s * mag(eng)) * Vec::unit(dim, k), x2};
    }
    case Family::ValueRange: {
      auto eng = engine_for(seed, kStreamRange, counter);
      const double v = half_width_;
      switch (counter % 3) {
        case 0: {
          Vec x1 = draw_box(eng, dim, v);
          Vec x2 = draw_box(eng, dim, v);
          return {std::move(x1), std::move(x2)};
        }
        case 1: {
          const Vec x2 = draw_box(eng, dim, v);
          std::uniform_real_distribution<double> mag(0.1 * v, v);
          const Vec step =
              mag(eng) * sign_vector_from_bits((counter / 3) & pattern_mask, dim);
          return {x2 + step, x2};
        }
        default: {
          // Short sign steps around near-zero base points, where fixed-point
          // maps with saturating perturbations are at their stiffest.
          const Vec x2 = draw_box(eng, dim, 0.1 * v);
          std::uniform_real_distribution<double> mag(0.01 * v, 0.5 * v);
          const Vec step =
              mag(eng) * sign_vector_from_bits((counter / 3) & pattern_mask, dim);
          return {x2 + step, x2};
        }
      }
    }
    case Family::Mixed:
      break;
  }
  throw std::logic_error("IncrementSampler: unreachable");
}

}  // namespace srgkit
