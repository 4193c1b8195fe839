#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "srgkit/pairings.hpp"
#include "srgkit/parallel.hpp"
#include "srgkit/samplers.hpp"
#include "srgkit/vec.hpp"

namespace srgkit {

enum class Side { Left, Right };

std::string_view side_name(Side s);
std::optional<Side> parse_side(std::string_view name);

/// Directional cosine together with the angle it defines. Cosines land in
/// [-1, 1] up to roundoff; overshoot at most 1e-9 is clamped silently and
/// anything larger is treated as a broken pairing.
struct DirectionalAngle {
  double cos_value = 0.0;
  double angle_rad = 0.0;
  Side side = Side::Left;
  PairingKind spec = PairingKind::L2Dot;
};

inline constexpr double kCosineClampTol = 1e-9;

DirectionalAngle cos_left(const Vec& x, const Vec& y, PairingKind spec);
DirectionalAngle cos_right(const Vec& x, const Vec& y, PairingKind spec);

/// Checks |cos(x,z) - cos(y,z) cos(x,y)| <= ||z - cos(y,z) y|| for unit
/// vectors under a semi-inner-product pairing.
struct DefectBoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};
DefectBoundCheck cosine_defect_bound_check(const Vec& x, const Vec& y,
                                           const Vec& z, PairingKind spec);

/// Facet of the unit ball a point exposes, per pairing kind.
struct L1SignPattern {
  std::vector<int> sigma;  // entries in {-1, 0, +1}
};
struct MinIndexFacet {
  std::size_t index = 0;  // 0-based
  int sign = 0;
};
struct PeakFacetSet {
  std::vector<std::size_t> indices;  // 0-based, sorted
  std::vector<int> signs;            // aligned with indices
};
using FacetLabel = std::variant<L1SignPattern, MinIndexFacet, PeakFacetSet>;

FacetLabel facet_label(const Vec& x, PairingKind spec);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
/// Sweeps stop once the off-diagonal Frobenius norm falls below
/// off_tol * max(1, ||s||_F).
std::vector<double> symmetric_eigenvalues(Mat s, double off_tol = 1e-12);

/// Logarithmic norm: half the top eigenvalue of a + a^T for l2, signed
/// column sums for l1, signed row sums for the max norm.
double log_norm_closed_form(const Mat& a, PairingKind spec);

/// Induced operator norm for the same three norms.
double induced_norm(const Mat& a, PairingKind spec);

/// Supremum of [a x, x] over unit-sphere samples. With the extreme-point
/// families of UnitSphereSampler included this attains the closed form for
/// the three polyhedral pairings.
struct LumerEstimate {
  double estimate = 0.0;
  Vec argmax_witness;
};
LumerEstimate log_norm_lumer_estimate(const Mat& a, PairingKind spec,
                                      const UnitSphereSampler& sampler,
                                      std::size_t n_samples,
                                      std::uint64_t seed,
                                      ExecPolicy policy = ExecPolicy::Parallel);

/// Supremum of ||a x|| cos(x, a x) over unit-sphere samples; agrees with the
/// Lumer functional pointwise.
double gain_phase_sup(const Mat& a, PairingKind spec,
                      const UnitSphereSampler& sampler, std::size_t n_samples,
                      std::uint64_t seed,
                      ExecPolicy policy = ExecPolicy::Parallel);

/// Checks whether every sampled increment keeps a left angle of at most
/// pi/2 (+ tol_angle). Pairs with a zero side are skipped.
struct MonotoneCheck {
  bool is_monotone_on_samples = false;
  double worst_angle = 0.0;
  std::optional<std::pair<Vec, Vec>> witness;
};
MonotoneCheck phase_monotone_check(std::span<const std::pair<Vec, Vec>> pairs,
                                   PairingKind spec, double tol_angle = 1e-9);

}  // namespace srgkit
