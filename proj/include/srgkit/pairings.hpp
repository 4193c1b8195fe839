#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "srgkit/vec.hpp"

namespace srgkit {

/// The four built-in norm/pairing combinations. L2Dot, L1Sign and
/// LInfMinIndex are semi-inner products (linear in the first slot); LInfMax
/// is only subadditive there.
enum class PairingKind { L2Dot, L1Sign, LInfMax, LInfMinIndex };

inline constexpr std::array<PairingKind, 4> kAllPairings{
    PairingKind::L2Dot, PairingKind::L1Sign, PairingKind::LInfMax,
    PairingKind::LInfMinIndex};

constexpr bool is_sip(PairingKind k) { return k != PairingKind::LInfMax; }

/// Short stable id used by the CLI and file headers:
/// "l2", "l1", "linf-max", "linf-min".
std::string_view pairing_name(PairingKind k);
std::optional<PairingKind> parse_pairing(std::string_view name);

/// Norm underlying the pairing (both LInf kinds share the max norm).
double norm(const Vec& x, PairingKind spec);

/// Componentwise sign with sign(0) = 0.
Vec sign_map(const Vec& x);

/// Indices attaining the max-norm of x up to a relative tolerance.
/// Stored 0-based; reports print them 1-based.
struct PeakInfo {
  std::vector<std::size_t> indices;  // sorted
  std::size_t min_index = 0;
  double tol_peak = 0.0;
};
PeakInfo peak_info(const Vec& x, double tol_peak = 0.0);

/// Evaluates the pairing [u, v] with u in the subadditive slot. By
/// convention [u, 0] = 0; min-index and max evaluations use exact peak
/// membership (tol 0).
double pair(const Vec& u, const Vec& v, PairingKind spec);

enum class JmtSide { Upper, Lower };

inline constexpr std::array<double, 3> kDefaultJmtSteps{1e-2, 1e-4, 1e-6};

/// One-sided norm-derivative pairing estimated by finite differences:
/// ||v|| * (||v + t u|| - ||v||) / t along a descending step schedule.
/// `value` is the smallest-step estimate; `estimates` keeps the whole
/// schedule for convergence diagnostics.
struct JmtEstimate {
  double value = 0.0;
  std::vector<double> estimates;
};
JmtEstimate jmt_pair_numeric(const Vec& u, const Vec& v, PairingKind spec,
                             JmtSide side,
                             std::span<const double> steps = kDefaultJmtSteps);

/// ||x+y||^2 + ||x-y||^2 - 2||x||^2 - 2||y||^2; zero exactly when the norm
/// comes from an inner product.
double parallelogram_defect(const Vec& x, const Vec& y, PairingKind spec);

}  // namespace srgkit
