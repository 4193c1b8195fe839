#include "srgkit/srg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "srgkit/rng.hpp"

namespace srgkit {

namespace {

constexpr std::uint64_t kStreamGraphPair = 0x9e3779b97f4a7c15ULL;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

bool negligible(double len, double ref1, double ref2) {
  return len < kZeroIncrementTol * (1.0 + ref1 + ref2);
}

DirectionalAngle sided_angle(const Vec& u, const Vec& v, PairingKind spec,
                             Side side) {
  return side == Side::Left ? cos_left(u, v, spec) : cos_right(u, v, spec);
}

}  // namespace

std::vector<IncrementRecord> draw_increments(const Operator& t,
                                             const IncrementSampler& sampler,
                                             std::size_t n, std::uint64_t seed,
                                             PairingKind spec,
                                             ExecPolicy policy) {
  if (t.is_graph()) {
    std::vector<std::optional<IncrementRecord>> slots(n);
    const auto& pairs = t.graph();
    if (pairs.size() < 2)
      throw std::invalid_argument("graph needs at least two points");
    for_each_index(n, policy, [&](std::size_t i) {
      auto eng = engine_for(seed, kStreamGraphPair, i);
      std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
      std::size_t a = pick(eng);
      std::size_t b = pick(eng);
      while (b == a) b = pick(eng);
      IncrementRecord rec;
      rec.x1 = pairs[a].first;
      rec.x2 = pairs[b].first;
      rec.u = rec.x1 - rec.x2;
      rec.v = pairs[a].second - pairs[b].second;
      rec.index = i;
      double nu = norm(rec.u, spec);
      double nv = norm(rec.v, spec);
      bool u_neg = negligible(nu, norm(rec.x1, spec), norm(rec.x2, spec));
      bool v_neg = negligible(nv, norm(pairs[a].second, spec),
                              norm(pairs[b].second, spec));
      if (u_neg && v_neg) return;
      rec.u_negligible = u_neg;
      slots[i] = std::move(rec);
    });
    std::vector<IncrementRecord> records;
    records.reserve(n);
    for (auto& slot : slots)
      if (slot) records.push_back(std::move(*slot));
    return records;
  }

  return increments_from_pairs(t, draw_pairs(sampler, n, seed, t.dim(), policy),
                               spec, policy);
}

std::vector<std::pair<Vec, Vec>> draw_pairs(const IncrementSampler& sampler,
                                            std::size_t n, std::uint64_t seed,
                                            std::size_t dim,
                                            ExecPolicy policy) {
  std::vector<std::pair<Vec, Vec>> pairs(n);
  for_each_index(n, policy, [&](std::size_t i) {
    pairs[i] = sampler.sample_pair(seed, i, dim);
  });
  return pairs;
}

std::vector<IncrementRecord> increments_from_pairs(
    const Operator& t, std::span<const std::pair<Vec, Vec>> pairs,
    PairingKind spec, ExecPolicy policy) {
  std::size_t n = pairs.size();
  std::vector<std::optional<IncrementRecord>> slots(n);
  std::vector<std::exception_ptr> errors(n);

  for_each_index(n, policy, [&](std::size_t i) {
    try {
      const Vec& x1 = pairs[i].first;
      const Vec& x2 = pairs[i].second;
      Vec y1 = t(x1);
      Vec y2 = t(x2);
      IncrementRecord rec;
      rec.x1 = x1;
      rec.x2 = x2;
      rec.u = x1 - x2;
      rec.v = y1 - y2;
      rec.index = i;
      double nu = norm(rec.u, spec);
      double nv = norm(rec.v, spec);
      bool u_neg = negligible(nu, norm(x1, spec), norm(x2, spec));
      bool v_neg = negligible(nv, norm(y1, spec), norm(y2, spec));
      if (u_neg && v_neg) return;
      rec.u_negligible = u_neg;
      slots[i] = std::move(rec);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });

  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) {
      try {
        std::rethrow_exception(errors[i]);
      } catch (const std::exception& e) {
        throw std::runtime_error("operator evaluation failed at sample " +
                                 std::to_string(i) + ": " + e.what());
      }
    }
  }

  std::vector<IncrementRecord> records;
  records.reserve(n);
  for (auto& slot : slots)
    if (slot) records.push_back(std::move(*slot));
  return records;
}

std::vector<IncrementRecord> swap_increments(
    std::span<const IncrementRecord> records) {
  std::vector<IncrementRecord> out;
  out.reserve(records.size());
  for (const IncrementRecord& rec : records) {
    IncrementRecord swapped;
    swapped.x1 = rec.x1;
    swapped.x2 = rec.x2;
    swapped.u = rec.v;
    swapped.v = rec.u;
    swapped.index = rec.index;
    // Mirror the forward classification exactly: the swapped point sits at
    // infinity iff the forward output increment was exactly zero (a forward
    // origin point). Re-thresholding here would let rounding residue in a
    // kernel direction land at infinity on one path and at a huge finite
    // gain on the other.
    swapped.u_negligible = rec.v.is_zero();
    out.push_back(std::move(swapped));
  }
  return out;
}

SrgCloud cloud_from_increments(std::span<const IncrementRecord> records,
                               PairingKind spec, Side side, SampleMeta meta,
                               ExecPolicy policy) {
  std::vector<SrgPoint> points(records.size());
  for_each_index(records.size(), policy, [&](std::size_t i) {
    const IncrementRecord& rec = records[i];
    SrgPoint p;
    p.sample_index = rec.index;
    if (rec.u_negligible) {
      p.gain = kInf;
      p.is_infinity = true;
    } else if (rec.v.is_zero()) {
      p.gain = 0.0;
      p.phase = 0.0;
    } else {
      p.gain = norm(rec.v, spec) / norm(rec.u, spec);
      p.phase = sided_angle(rec.u, rec.v, spec, side).angle_rad;
    }
    points[i] = p;
  });

  SrgCloud cloud;
  cloud.points = std::move(points);
  cloud.spec = spec;
  cloud.side = side;
  cloud.meta = std::move(meta);
  return cloud;
}

SrgCloud sample_srg(const Operator& t, PairingKind spec, Side side,
                    const IncrementSampler& sampler, std::size_t n,
                    std::uint64_t seed, ExecPolicy policy) {
  auto records = draw_increments(t, sampler, n, seed, spec, policy);
  SampleMeta meta{sampler.id(), n, seed};
  return cloud_from_increments(records, spec, side, std::move(meta), policy);
}

std::vector<std::complex<double>> complex_points(const SrgCloud& cloud) {
  std::vector<std::complex<double>> out;
  out.reserve(2 * cloud.points.size());
  for (const SrgPoint& p : cloud.points) {
    if (p.is_infinity) continue;
    double re = p.re();
    double im = p.im();
    out.emplace_back(re, im);
    if (im != 0.0) out.emplace_back(re, -im);
  }
  return out;
}

std::string_view property_name(OperatorProperty p) {
  switch (p) {
    case OperatorProperty::Lipschitz: return "lipschitz";
    case OperatorProperty::OneSided: return "one-sided";
    case OperatorProperty::StronglyMonotone: return "strongly-monotone";
    case OperatorProperty::Cocoercive: return "cocoercive";
  }
  return "";
}

std::optional<OperatorProperty> parse_property(std::string_view name) {
  if (name == "lipschitz") return OperatorProperty::Lipschitz;
  if (name == "one-sided") return OperatorProperty::OneSided;
  if (name == "strongly-monotone") return OperatorProperty::StronglyMonotone;
  if (name == "cocoercive") return OperatorProperty::Cocoercive;
  return std::nullopt;
}

CertificateReport certify(const SrgCloud& cloud, OperatorProperty property,
                          double parameter, double tolerance) {
  if (property == OperatorProperty::Lipschitz && parameter <= 0.0)
    throw std::invalid_argument("lipschitz constant must be positive");
  if (property == OperatorProperty::StronglyMonotone && parameter < 0.0)
    throw std::invalid_argument("monotonicity modulus must be nonnegative");
  if (property == OperatorProperty::Cocoercive && parameter <= 0.0)
    throw std::invalid_argument("cocoercivity parameter must be positive");

  CertificateReport report;
  report.property = property;
  report.parameter = parameter;
  report.tolerance = tolerance;
  report.margin = kInf;

  for (const SrgPoint& p : cloud.points) {
    double slack = 0.0;
    if (p.is_infinity) {
      // An unbounded gain breaks any gain bound or cocoercivity disk, but
      // says nothing about the half-plane properties (the defining
      // inequality degenerates to 0 <= 0 on a zero input increment).
      if (property == OperatorProperty::OneSided ||
          property == OperatorProperty::StronglyMonotone)
        continue;
      slack = -kInf;
    } else {
      switch (property) {
        case OperatorProperty::Lipschitz:
          slack = parameter - p.gain;
          break;
        case OperatorProperty::OneSided:
          slack = parameter - p.re();
          break;
        case OperatorProperty::StronglyMonotone:
          slack = p.re() - parameter;
          break;
        case OperatorProperty::Cocoercive: {
          double r = 1.0 / (2.0 * parameter);
          double dist =
              std::sqrt(std::max(0.0, p.gain * p.gain - 2.0 * r * p.re() + r * r));
          slack = r - dist;
          break;
        }
      }
    }
    if (slack < report.margin) {
      report.margin = slack;
      report.witness = p;
    }
  }

  report.verdict = report.margin >= -tolerance
                       ? CertificateReport::Verdict::HoldsOnSamples
                       : CertificateReport::Verdict::Violated;
  return report;
}

ContractionFactor contraction_factor(const SrgCloud& cloud) {
  ContractionFactor f;
  for (const SrgPoint& p : cloud.points) {
    if (p.is_infinity) return {kInf, true};
    f.value = std::max(f.value, p.gain);
  }
  return f;
}

SrgCloud srg_scale(const SrgCloud& cloud, double alpha) {
  if (cloud.side != Side::Left)
    throw std::invalid_argument("scaling identity needs a left cloud");
  if (!is_sip(cloud.spec))
    throw std::invalid_argument(
        "scaling identity needs a semi-inner-product pairing");

  SrgCloud out;
  out.spec = cloud.spec;
  out.side = cloud.side;
  out.meta = cloud.meta;
  out.points.reserve(cloud.points.size());
  for (SrgPoint p : cloud.points) {
    if (alpha == 0.0) {
      if (p.is_infinity) continue;  // 0 * infinity has no limit point
      p.gain = 0.0;
      p.phase = 0.0;
    } else if (p.is_infinity) {
      // stays at infinity
    } else if (alpha > 0.0) {
      p.gain *= alpha;
    } else {
      p.gain *= -alpha;
      // Reflect the direction only if there is one; origin points keep the
      // phase = 0 sampling convention.
      if (p.gain != 0.0) p.phase = kPi - p.phase;
    }
    out.points.push_back(p);
  }
  return out;
}

SrgCloud srg_invert(const SrgCloud& cloud) {
  if (cloud.side != Side::Right)
    throw std::invalid_argument(
        "inversion maps a right cloud of the relation to a left cloud of its "
        "inverse");

  SrgCloud out;
  out.spec = cloud.spec;
  out.side = Side::Left;
  out.meta = cloud.meta;
  out.points.reserve(cloud.points.size());
  for (SrgPoint p : cloud.points) {
    if (p.is_infinity) {
      p.is_infinity = false;
      p.gain = 0.0;
      p.phase = 0.0;
    } else if (p.gain == 0.0) {
      p.is_infinity = true;
      p.gain = kInf;
      p.phase = 0.0;
    } else {
      p.gain = 1.0 / p.gain;
    }
    out.points.push_back(p);
  }
  return out;
}

namespace {

void require_compatible(const SrgCloud& s1, const SrgCloud& s2) {
  if (s1.spec != s2.spec || s1.side != s2.side)
    throw std::invalid_argument("clouds disagree on pairing or side");
  if (!is_sip(s1.spec))
    throw std::invalid_argument(
        "sum and composition rules need a semi-inner-product pairing");
}

}  // namespace

bool boxplus_contains(const SrgCloud& s1, const SrgCloud& s2,
                      const SrgPoint& z, double tol) {
  require_compatible(s1, s2);
  auto pair_matches = [&](const SrgPoint& p1, const SrgPoint& p2) {
    if (z.is_infinity) return p1.is_infinity || p2.is_infinity;
    if (p1.is_infinity || p2.is_infinity) return false;
    double g = z.gain;
    if (std::abs(p1.re() + p2.re() - z.re()) > tol) return false;
    if (g > p1.gain + p2.gain + tol) return false;
    if (g < std::abs(p1.gain - p2.gain) - tol) return false;
    return true;
  };
  // Matched-index pairs come from matched increment draws and are the
  // expected witnesses, so try them before the full product scan.
  std::size_t common = std::min(s1.points.size(), s2.points.size());
  for (std::size_t i = 0; i < common; ++i)
    if (pair_matches(s1.points[i], s2.points[i])) return true;
  for (const SrgPoint& p1 : s1.points)
    for (const SrgPoint& p2 : s2.points)
      if (pair_matches(p1, p2)) return true;
  return false;
}

bool diamond_contains(const SrgCloud& s1, const SrgCloud& s2, double sigma,
                      const SrgPoint& z, double tol) {
  require_compatible(s1, s2);
  auto pair_matches = [&](const SrgPoint& p1, const SrgPoint& p2) {
    if (z.is_infinity) {
      return (p1.is_infinity && (p2.is_infinity || p2.gain > 0.0)) ||
             (p2.is_infinity && p1.gain > 0.0);
    }
    if (p1.is_infinity || p2.is_infinity) return false;
    if (std::abs(p1.gain * p2.gain - z.gain) > tol * (1.0 + z.gain))
      return false;
    if (std::abs(p1.re() * p2.re() - z.re()) > sigma * z.gain + tol)
      return false;
    return true;
  };
  std::size_t common = std::min(s1.points.size(), s2.points.size());
  for (std::size_t i = 0; i < common; ++i)
    if (pair_matches(s1.points[i], s2.points[i])) return true;
  for (const SrgPoint& p1 : s1.points)
    for (const SrgPoint& p2 : s2.points)
      if (pair_matches(p1, p2)) return true;
  return false;
}

double sigma_from_increments(std::span<const IncrementRecord> records,
                             PairingKind spec) {
  if (!is_sip(spec))
    throw std::invalid_argument(
        "chord defect is defined for semi-inner-product pairings");
  std::vector<double> defects(records.size(), 0.0);
  for_each_index(records.size(), ExecPolicy::Parallel, [&](std::size_t i) {
    const IncrementRecord& rec = records[i];
    if (rec.u_negligible || rec.v.is_zero()) return;
    double nu = norm(rec.u, spec);
    double nv = norm(rec.v, spec);
    double c = cos_left(rec.u, rec.v, spec).cos_value;
    Vec chord = (1.0 / nv) * rec.v + (-c / nu) * rec.u;
    defects[i] = norm(chord, spec);
  });
  double worst = 0.0;
  for (double d : defects) worst = std::max(worst, d);
  return worst;
}

double estimate_sigma(const Operator& a, PairingKind spec,
                      const IncrementSampler& sampler, std::size_t n,
                      std::uint64_t seed, ExecPolicy policy) {
  auto records = draw_increments(a, sampler, n, seed, spec, policy);
  return sigma_from_increments(records, spec);
}

}  // namespace srgkit
