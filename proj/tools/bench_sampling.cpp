#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "srgkit/case_studies.hpp"
#include "srgkit/srg.hpp"

using namespace srgkit;

namespace {

double seconds_for(ExecPolicy policy, const Operator& op, std::size_t n,
                   SrgCloud& out) {
  auto start = std::chrono::steady_clock::now();
  out = sample_srg(op, PairingKind::L2Dot, Side::Left,
                   IncrementSampler::mixed(), n, 42, policy);
  auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

bool identical(const SrgCloud& a, const SrgCloud& b) {
  if (a.points.size() != b.points.size()) return false;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    const SrgPoint& p = a.points[i];
    const SrgPoint& q = b.points[i];
    if (p.is_infinity != q.is_infinity) return false;
    if (p.is_infinity) continue;
    if (p.gain != q.gain || p.phase != q.phase) return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10)
                           : std::size_t(200000);
  if (n == 0) n = 200000;  // non-numeric or zero argument
  Operator op = cubic_diag_operator(matrix_a1(), "f1");

  SrgCloud warmup;
  seconds_for(ExecPolicy::Serial, op, 1000, warmup);

  SrgCloud serial_cloud, parallel_cloud;
  double t_serial = seconds_for(ExecPolicy::Serial, op, n, serial_cloud);
  double t_parallel = seconds_for(ExecPolicy::Parallel, op, n, parallel_cloud);

  std::printf("samples:          %zu\n", n);
  std::printf("serial:           %.3f s\n", t_serial);
  std::printf("parallel:         %.3f s\n", t_parallel);
  std::printf("speedup:          %.2fx\n", t_serial / t_parallel);
  bool same = identical(serial_cloud, parallel_cloud);
  std::printf("bitwise identical: %s\n", same ? "yes" : "NO");
  return same ? 0 : 1;
}
