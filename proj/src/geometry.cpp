#include "srgkit/geometry.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace srgkit {

namespace {

DirectionalAngle make_angle(double c, Side side, PairingKind spec) {
  const double overshoot = std::abs(c) - 1.0;
  if (overshoot > kCosineClampTol) {
    throw std::runtime_error("directional cosine outside [-1, 1]");
  }
  if (overshoot > 0.0) c = c > 0.0 ? 1.0 : -1.0;
  return {c, std::acos(c), side, spec};
}

void require_square(const Mat& a, const char* what) {
  if (!a.is_square() || a.rows() == 0) {
    throw std::invalid_argument(std::string(what) + ": square matrix required");
  }
}

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

}  // namespace

std::string_view side_name(Side s) {
  return s == Side::Left ? "left" : "right";
}

std::optional<Side> parse_side(std::string_view name) {
  if (name == "left") return Side::Left;
  if (name == "right") return Side::Right;
  return std::nullopt;
}

DirectionalAngle cos_left(const Vec& x, const Vec& y, PairingKind spec) {
  if (x.is_zero() || y.is_zero()) {
    throw std::domain_error("cos_left: arguments must be nonzero");
  }
  const double c = pair(y, x, spec) / (norm(x, spec) * norm(y, spec));
  return make_angle(c, Side::Left, spec);
}

DirectionalAngle cos_right(const Vec& x, const Vec& y, PairingKind spec) {
  DirectionalAngle a = cos_left(y, x, spec);
  a.side = Side::Right;
  return a;
}

DefectBoundCheck cosine_defect_bound_check(const Vec& x, const Vec& y,
                                           const Vec& z, PairingKind spec) {
  if (!is_sip(spec)) {
    throw std::invalid_argument(
        "cosine_defect_bound_check: semi-inner-product pairing required");
  }
  for (const Vec* v : {&x, &y, &z}) {
    if (std::abs(norm(*v, spec) - 1.0) > 1e-9) {
      throw std::invalid_argument(
          "cosine_defect_bound_check: inputs must be unit vectors; "
          "normalize first");
    }
  }
  const double cxz = cos_left(x, z, spec).cos_value;
  const double cyz = cos_left(y, z, spec).cos_value;
  const double cxy = cos_left(x, y, spec).cos_value;
  DefectBoundCheck out;
  out.lhs = std::abs(cxz - cyz * cxy);
  out.rhs = norm(z - cyz * y, spec);
  out.holds = out.lhs <= out.rhs + 1e-12;
  return out;
}

FacetLabel facet_label(const Vec& x, PairingKind spec) {
  if (x.is_zero()) throw std::domain_error("facet_label: zero vector");
  switch (spec) {
    case PairingKind::L2Dot:
      throw std::invalid_argument(
          "facet_label: the l2 ball is smooth, no facet structure");
    case PairingKind::L1Sign: {
      L1SignPattern lab;
      lab.sigma.reserve(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        lab.sigma.push_back(sign_of(x[i]));
      }
      return lab;
    }
    case PairingKind::LInfMinIndex: {
      const PeakInfo info = peak_info(x);
      return MinIndexFacet{info.min_index, sign_of(x[info.min_index])};
    }
    case PairingKind::LInfMax: {
      const PeakInfo info = peak_info(x);
      PeakFacetSet lab;
      lab.indices = info.indices;
      lab.signs.reserve(lab.indices.size());
      for (std::size_t i : lab.indices) lab.signs.push_back(sign_of(x[i]));
      return lab;
    }
  }
  throw std::logic_error("facet_label: unreachable");
}

std::vector<double> symmetric_eigenvalues(Mat s, double off_tol) {
  require_square(s, "symmetric_eigenvalues");
  const std::size_t n = s.rows();
  const double stop = off_tol * std::max(1.0, s.frobenius_norm());
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * s(p, q) * s(p, q);
    }
    if (std::sqrt(off) <= stop) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = s(p, q);
        if (apq == 0.0) continue;
        const double tau = (s(q, q) - s(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = t * c;
        const double app = s(p, p);
        const double aqq = s(q, q);
        s(p, p) = app - t * apq;
        s(q, q) = aqq + t * apq;
        s(p, q) = 0.0;
        s(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = s(k, p);
          const double akq = s(k, q);
          s(k, p) = c * akp - sn * akq;
          s(p, k) = s(k, p);
          s(k, q) = sn * akp + c * akq;
          s(q, k) = s(k, q);
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = s(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

double log_norm_closed_form(const Mat& a, PairingKind spec) {
  require_square(a, "log_norm_closed_form");
  const std::size_t n = a.rows();
  switch (spec) {
    case PairingKind::L2Dot: {
      Mat sym(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          sym(i, j) = 0.5 * (a(i, j) + a(j, i));
        }
      }
      return symmetric_eigenvalues(sym).back();
    }
    case PairingKind::L1Sign: {
      double best = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          s += i == j ? a(j, j) : std::abs(a(i, j));
        }
        if (j == 0 || s > best) best = s;
      }
      return best;
    }
    case PairingKind::LInfMax:
    case PairingKind::LInfMinIndex: {
      double best = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          s += j == i ? a(i, i) : std::abs(a(i, j));
        }
        if (i == 0 || s > best) best = s;
      }
      return best;
    }
  }
  throw std::logic_error("log_norm_closed_form: unreachable");
}

double induced_norm(const Mat& a, PairingKind spec) {
  require_square(a, "induced_norm");
  const std::size_t n = a.rows();
  switch (spec) {
    case PairingKind::L2Dot: {
      const Mat gram = a.transposed().multiply(a);
      const double top = symmetric_eigenvalues(gram).back();
      return std::sqrt(std::max(0.0, top));
    }
    case PairingKind::L1Sign: {
      double best = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += std::abs(a(i, j));
        best = std::max(best, s);
      }
      return best;
    }
    case PairingKind::LInfMax:
    case PairingKind::LInfMinIndex: {
      double best = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += std::abs(a(i, j));
        best = std::max(best, s);
      }
      return best;
    }
  }
  throw std::logic_error("induced_norm: unreachable");
}

LumerEstimate log_norm_lumer_estimate(const Mat& a, PairingKind spec,
                                      const UnitSphereSampler& sampler,
                                      std::size_t n_samples, std::uint64_t seed,
                                      ExecPolicy policy) {
  require_square(a, "log_norm_lumer_estimate");
  if (n_samples == 0) {
    throw std::invalid_argument("log_norm_lumer_estimate: no samples");
  }
  const std::size_t dim = a.rows();
  std::vector<double> values(n_samples);
  for_each_index(n_samples, policy, [&](std::size_t i) {
    const Vec x = sampler.sample(seed, i, dim);
    values[i] = pair(a.apply(x), x, spec);
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < n_samples; ++i) {
    if (values[i] > values[best]) best = i;
  }
  return {values[best], sampler.sample(seed, best, dim)};
}

double gain_phase_sup(const Mat& a, PairingKind spec,
                      const UnitSphereSampler& sampler, std::size_t n_samples,
                      std::uint64_t seed, ExecPolicy policy) {
  require_square(a, "gain_phase_sup");
  if (n_samples == 0) throw std::invalid_argument("gain_phase_sup: no samples");
  const std::size_t dim = a.rows();
  std::vector<double> values(n_samples);
  for_each_index(n_samples, policy, [&](std::size_t i) {
    const Vec x = sampler.sample(seed, i, dim);
    const Vec ax = a.apply(x);
    if (ax.is_zero()) {
      values[i] = 0.0;
      return;
    }
    values[i] = norm(ax, spec) * cos_left(x, ax, spec).cos_value;
  });
  double best = values[0];
  for (std::size_t i = 1; i < n_samples; ++i) best = std::max(best, values[i]);
  return best;
}

MonotoneCheck phase_monotone_check(std::span<const std::pair<Vec, Vec>> pairs,
                                   PairingKind spec, double tol_angle) {
  MonotoneCheck out;
  out.is_monotone_on_samples = true;
  bool any = false;
  for (const auto& [u, v] : pairs) {
    if (u.is_zero() || v.is_zero()) continue;
    const double angle = cos_left(u, v, spec).angle_rad;
    if (!any || angle > out.worst_angle) {
      out.worst_angle = angle;
      out.witness = std::pair<Vec, Vec>{u, v};
    }
    any = true;
  }
  constexpr double kHalfPi = 1.57079632679489661923;
  out.is_monotone_on_samples = !any || out.worst_angle <= kHalfPi + tol_angle;
  return out;
}

}  // namespace srgkit
