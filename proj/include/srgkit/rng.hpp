#pragma once

#include <cstdint>
#include <random>

namespace srgkit {

/// SplitMix64 finalizer. Decorrelates nearby inputs well enough to derive
/// independent engine seeds from (seed, stream, index) triples.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Fresh engine for one sample. Sample i never shares state with sample j,
/// which is what makes parallel and serial sampling bit-identical.
inline std::mt19937_64 engine_for(std::uint64_t seed, std::uint64_t stream,
                                  std::uint64_t index) {
  const std::uint64_t a = mix64(seed ^ 0x6a09e667f3bcc909ULL);
  const std::uint64_t b = mix64(a ^ stream);
  return std::mt19937_64(mix64(b ^ (index * 0x2545f4914f6cdd1dULL + 1)));
}

}  // namespace srgkit
