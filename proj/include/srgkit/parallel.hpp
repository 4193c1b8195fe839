#pragma once

#include <cstddef>

namespace srgkit {

/// Execution policy for the sampling kernels. Parallel distributes sample
/// indices across OpenMP threads; every sample derives its RNG stream from
/// (seed, index) and results are written by index, so both policies produce
/// identical output.
enum class ExecPolicy { Serial, Parallel };

template <typename Body>
void for_each_index(std::size_t count, ExecPolicy policy, const Body& body) {
#ifdef _OPENMP
  if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(count); ++i) {
      body(static_cast<std::size_t>(i));
    }
    return;
  }
#else
  (void)policy;
#endif
  for (std::size_t i = 0; i < count; ++i) {
    body(i);
  }
}

}  // namespace srgkit
