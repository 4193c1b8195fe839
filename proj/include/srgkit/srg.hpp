#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "srgkit/geometry.hpp"
#include "srgkit/operators.hpp"
#include "srgkit/pairings.hpp"
#include "srgkit/parallel.hpp"
#include "srgkit/samplers.hpp"

namespace srgkit {

/// One sampled graph point: gain ||v||/||u|| and the directional angle
/// between input and output increments. The stored phase is the upper-half
/// representative in [0, pi]; the conjugate twin is emitted on export.
/// A zero input increment with nonzero output is the point at infinity.
struct SrgPoint {
  double gain = 0.0;
  double phase = 0.0;
  bool is_infinity = false;
  std::uint64_t sample_index = 0;

  double re() const { return gain * std::cos(phase); }
  double im() const { return gain * std::sin(phase); }
};

struct SampleMeta {
  std::string sampler_id;
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

struct SrgCloud {
  std::vector<SrgPoint> points;
  PairingKind spec = PairingKind::L2Dot;
  Side side = Side::Left;
  SampleMeta meta;
};

/// Screened increment with its generating pair kept for provenance.
/// u_negligible marks ||x1 - x2|| below the relative zero threshold; such
/// records become infinity points. Pairs negligible on both sides are not
/// recorded at all.
struct IncrementRecord {
  Vec x1;
  Vec x2;
  Vec u;
  Vec v;
  std::uint64_t index = 0;
  bool u_negligible = false;
};

inline constexpr double kZeroIncrementTol = 1e-12;

std::vector<IncrementRecord> draw_increments(
    const Operator& t, const IncrementSampler& sampler, std::size_t n,
    std::uint64_t seed, PairingKind spec,
    ExecPolicy policy = ExecPolicy::Parallel);

/// Increments of t over caller-supplied evaluation pairs. Reusing one pair
/// list across several operators yields matched clouds for the calculus
/// checks.
std::vector<IncrementRecord> increments_from_pairs(
    const Operator& t, std::span<const std::pair<Vec, Vec>> pairs,
    PairingKind spec, ExecPolicy policy = ExecPolicy::Parallel);

/// Evaluation pairs drawn by a sampler, without an operator.
std::vector<std::pair<Vec, Vec>> draw_pairs(const IncrementSampler& sampler,
                                            std::size_t n, std::uint64_t seed,
                                            std::size_t dim,
                                            ExecPolicy policy =
                                                ExecPolicy::Parallel);

/// (u, v) -> (v, u): the increments of the inverse relation.
std::vector<IncrementRecord> swap_increments(
    std::span<const IncrementRecord> records);

SrgCloud cloud_from_increments(std::span<const IncrementRecord> records,
                               PairingKind spec, Side side, SampleMeta meta,
                               ExecPolicy policy = ExecPolicy::Parallel);

SrgCloud sample_srg(const Operator& t, PairingKind spec, Side side,
                    const IncrementSampler& sampler, std::size_t n,
                    std::uint64_t seed,
                    ExecPolicy policy = ExecPolicy::Parallel);

/// Finite points of the cloud as complex numbers, conjugate-closed.
std::vector<std::complex<double>> complex_points(const SrgCloud& cloud);

enum class OperatorProperty { Lipschitz, OneSided, StronglyMonotone, Cocoercive };

std::string_view property_name(OperatorProperty p);
std::optional<OperatorProperty> parse_property(std::string_view name);

/// Sample-level certificate for one of the four point-region properties:
/// |z| <= l, re z <= c, re z >= mu, |z - 1/(2 gamma)| <= 1/(2 gamma).
/// margin is the worst signed slack; the verdict holds when it stays above
/// -tolerance. Infinity points fail the two bounded regions, and are
/// neutral for the half-plane ones (their generating inequality is 0 <= 0).
struct CertificateReport {
  OperatorProperty property = OperatorProperty::Lipschitz;
  double parameter = 0.0;
  enum class Verdict { HoldsOnSamples, Violated } verdict = Verdict::Violated;
  double margin = 0.0;
  std::optional<SrgPoint> witness;
  double tolerance = 0.0;
};

CertificateReport certify(const SrgCloud& cloud, OperatorProperty property,
                          double parameter, double tolerance = 1e-9);

/// Largest sampled gain; +infinity with the flag set when the cloud has a
/// point at infinity.
struct ContractionFactor {
  double value = 0.0;
  bool at_infinity = false;
};
ContractionFactor contraction_factor(const SrgCloud& cloud);

/// Pointwise z -> alpha z on a left cloud of a semi-inner-product pairing.
/// alpha = 0 collapses finite points to the origin and drops infinities.
SrgCloud srg_scale(const SrgCloud& cloud, double alpha);

/// Pointwise z -> 1 / conj(z) on a right cloud: gains invert, phases stay,
/// the origin and infinity trade places. The result is a left cloud of the
/// inverse relation.
SrgCloud srg_invert(const SrgCloud& cloud);

/// Membership of z in the sum region built from two clouds: some pair
/// (z1, z2) has re z1 + re z2 matching re z and ||z1|-|z2|| <= |z| <=
/// |z1|+|z2|, all within tol.
bool boxplus_contains(const SrgCloud& s1, const SrgCloud& s2,
                      const SrgPoint& z, double tol);

/// Membership of z in the composition region: some pair multiplies gains
/// exactly and keeps |re z - re z1 re z2| <= sigma |z| + tol.
bool diamond_contains(const SrgCloud& s1, const SrgCloud& s2, double sigma,
                      const SrgPoint& z, double tol);

/// Worst normalized chord defect ||v/||v|| - cos(u, v) u/||u|| || over
/// sampled increments; bounds the real-part distortion of compositions.
double estimate_sigma(const Operator& a, PairingKind spec,
                      const IncrementSampler& sampler, std::size_t n,
                      std::uint64_t seed,
                      ExecPolicy policy = ExecPolicy::Parallel);
double sigma_from_increments(std::span<const IncrementRecord> records,
                             PairingKind spec);

}  // namespace srgkit
