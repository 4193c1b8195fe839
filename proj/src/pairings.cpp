#include "srgkit/pairings.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace srgkit {

namespace {

void require_same_dim(const Vec& a, const Vec& b) {
  if (a.size() != b.size() || a.size() == 0) {
    throw std::invalid_argument("pairing: dimension mismatch");
  }
}

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

std::string_view pairing_name(PairingKind k) {
  switch (k) {
    case PairingKind::L2Dot:
      return "l2";
    case PairingKind::L1Sign:
      return "l1";
    case PairingKind::LInfMax:
      return "linf-max";
    case PairingKind::LInfMinIndex:
      return "linf-min";
  }
  return "?";
}

std::optional<PairingKind> parse_pairing(std::string_view name) {
  for (PairingKind k : kAllPairings) {
    if (name == pairing_name(k)) return k;
  }
  return std::nullopt;
}

double norm(const Vec& x, PairingKind spec) {
  if (x.size() == 0) throw std::invalid_argument("norm: empty vector");
  double s = 0.0;
  switch (spec) {
    case PairingKind::L1Sign:
      for (std::size_t i = 0; i < x.size(); ++i) s += std::abs(x[i]);
      return s;
    case PairingKind::L2Dot:
      for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * x[i];
      return std::sqrt(s);
    case PairingKind::LInfMax:
    case PairingKind::LInfMinIndex:
      for (std::size_t i = 0; i < x.size(); ++i) s = std::max(s, std::abs(x[i]));
      return s;
  }
  return 0.0;
}

Vec sign_map(const Vec& x) {
  std::vector<double> s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) s[i] = sgn(x[i]);
  return Vec(std::move(s));
}

PeakInfo peak_info(const Vec& x, double tol_peak) {
  if (x.size() == 0) throw std::invalid_argument("peak_info: empty vector");
  if (tol_peak < 0.0) throw std::invalid_argument("peak_info: negative tol");
  if (x.is_zero()) throw std::domain_error("peak_info: zero vector has no peak");
  const double top = norm(x, PairingKind::LInfMax);
  const double cut = top * (1.0 - tol_peak);
  PeakInfo info;
  info.tol_peak = tol_peak;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) >= cut) info.indices.push_back(i);
  }
  info.min_index = info.indices.front();
  return info;
}

double pair(const Vec& u, const Vec& v, PairingKind spec) {
  require_same_dim(u, v);
  if (v.is_zero()) return 0.0;
  switch (spec) {
    case PairingKind::L2Dot:
      return dot(u, v);
    case PairingKind::L1Sign: {
      double s = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) {
        if (v[i] > 0.0) {
          s += u[i];
        } else if (v[i] < 0.0) {
          s -= u[i];
        }
      }
      return norm(v, spec) * s;
    }
    case PairingKind::LInfMax: {
      const double top = norm(v, spec);
      bool first = true;
      double best = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) {
        if (std::abs(v[i]) == top) {
          const double cand = u[i] * v[i];
          if (first || cand > best) best = cand;
          first = false;
        }
      }
      return best;
    }
    case PairingKind::LInfMinIndex: {
      const double top = norm(v, spec);
      for (std::size_t i = 0; i < u.size(); ++i) {
        if (std::abs(v[i]) == top) return top * sgn(v[i]) * u[i];
      }
      break;
    }
  }
  throw std::logic_error("pair: unreachable");
}

JmtEstimate jmt_pair_numeric(const Vec& u, const Vec& v, PairingKind spec,
                             JmtSide side, std::span<const double> steps) {
  require_same_dim(u, v);
  if (v.is_zero()) {
    throw std::domain_error("jmt_pair_numeric: v must be nonzero");
  }
  if (steps.empty()) {
    throw std::invalid_argument("jmt_pair_numeric: empty step schedule");
  }
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (!(steps[i] > 0.0) || (i > 0 && steps[i] >= steps[i - 1])) {
      throw std::invalid_argument(
          "jmt_pair_numeric: steps must be positive and descending");
    }
  }
  const double nv = norm(v, spec);
  JmtEstimate out;
  out.estimates.reserve(steps.size());
  for (double step : steps) {
    const double t = side == JmtSide::Upper ? step : -step;
    const double q = (norm(v + t * u, spec) - nv) / t;
    out.estimates.push_back(nv * q);
  }
  out.value = out.estimates.back();
  return out;
}

double parallelogram_defect(const Vec& x, const Vec& y, PairingKind spec) {
  require_same_dim(x, y);
  const double a = norm(x + y, spec);
  const double b = norm(x - y, spec);
  const double c = norm(x, spec);
  const double d = norm(y, spec);
  return a * a + b * b - 2.0 * c * c - 2.0 * d * d;
}

}  // namespace srgkit
