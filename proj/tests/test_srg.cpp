#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <stdexcept>

#include "doctest.h"
#include "srgkit/srg.hpp"
#include "support.hpp"

using namespace srgkit;
using testsupport::close;
using testsupport::close_rel;

namespace {
constexpr std::uint64_t kSeed = 77;
constexpr double kPi = 3.14159265358979323846;

SrgCloud cloud_of(const Mat& m, PairingKind spec, Side side = Side::Left,
                  std::size_t n = 400) {
  return sample_srg(Operator::matrix(m), spec, side,
                    IncrementSampler::mixed(), n, kSeed);
}
}  // namespace

TEST_CASE("identity and its negative pin gain and phase") {
  for (PairingKind kind : kAllPairings) {
    SrgCloud id = cloud_of(Mat::identity(3), kind);
    CHECK(id.points.size() > 0);
    for (const SrgPoint& p : id.points) {
      CHECK_FALSE(p.is_infinity);
      CHECK(close(p.gain, 1.0, 1e-12));
      CHECK(std::abs(p.phase) <= 1e-7);
    }
  }
  // -I realizes gain one at the straight angle for every sip pairing
  for (PairingKind kind :
       {PairingKind::L2Dot, PairingKind::L1Sign, PairingKind::LInfMinIndex}) {
    SrgCloud neg = cloud_of(-1.0 * Mat::identity(3), kind);
    for (const SrgPoint& p : neg.points) {
      CHECK(close(p.gain, 1.0, 1e-12));
      CHECK(close(p.phase, kPi, 1e-7));
    }
  }
}

TEST_CASE("scaling a matrix scales gains and keeps phases") {
  Mat a{{1.0, 2.0}, {0.0, -1.0}};
  SrgCloud base = cloud_of(a, PairingKind::L2Dot);
  SrgCloud twice = cloud_of(2.0 * a, PairingKind::L2Dot);
  REQUIRE(base.points.size() == twice.points.size());
  for (std::size_t i = 0; i < base.points.size(); ++i) {
    CHECK(close_rel(twice.points[i].gain, 2.0 * base.points[i].gain, 1e-12));
    CHECK(close(twice.points[i].phase, base.points[i].phase, 1e-12));
  }
}

TEST_CASE("zero output increments sit at the origin") {
  Mat rank1{{1.0, 0.0}, {0.0, 0.0}};
  std::vector<std::pair<Vec, Vec>> pairs{
      {Vec{0.0, 1.0}, Vec{0.0, -1.0}},  // difference in the null space
      {Vec{1.0, 0.0}, Vec{0.0, 0.0}}};
  auto recs = increments_from_pairs(Operator::matrix(rank1), pairs,
                                    PairingKind::L2Dot);
  SrgCloud cloud = cloud_from_increments(recs, PairingKind::L2Dot, Side::Left,
                                         {"manual", recs.size(), 0});
  REQUIRE(cloud.points.size() == 2);
  CHECK(cloud.points[0].gain == 0.0);
  CHECK(cloud.points[0].phase == 0.0);
  CHECK_FALSE(cloud.points[0].is_infinity);
  CHECK(cloud.points[1].gain == 1.0);
}

TEST_CASE("a multivalued graph emits a point at infinity") {
  Operator::GraphPairs pairs{{Vec{1.0}, Vec{0.0}}, {Vec{1.0}, Vec{2.0}}};
  auto recs = draw_increments(Operator::finite_graph(pairs),
                              IncrementSampler::mixed(), 50, kSeed,
                              PairingKind::L2Dot);
  SrgCloud cloud = cloud_from_increments(recs, PairingKind::L2Dot, Side::Left,
                                         {"graph", recs.size(), kSeed});
  bool has_infinity = false;
  for (const SrgPoint& p : cloud.points) has_infinity |= p.is_infinity;
  CHECK(has_infinity);
  ContractionFactor cf = contraction_factor(cloud);
  CHECK(cf.at_infinity);
  CHECK(std::isinf(cf.value));
}

TEST_CASE("complex points are conjugate closed and skip infinity") {
  Mat rot{{0.0, -1.0}, {1.0, 0.0}};
  SrgCloud cloud = cloud_of(rot, PairingKind::L2Dot);
  auto zs = complex_points(cloud);
  // rotations have angle pi/2 everywhere, so every point gets a twin
  CHECK(zs.size() == 2 * cloud.points.size());
  for (const auto& z : zs) CHECK(close(std::abs(z), 1.0, 1e-12));
  double total_im = 0.0;
  for (const auto& z : zs) total_im += z.imag();
  CHECK(close(total_im, 0.0, 1e-9));

  // under the sign pairing [u, u] and ||u||^2 are the same sums, so the
  // identity cloud is exactly real and no point is duplicated
  SrgCloud id = cloud_of(Mat::identity(2), PairingKind::L1Sign);
  auto real_zs = complex_points(id);
  CHECK(real_zs.size() == id.points.size());
}

TEST_CASE("certificates accept and reject with witnesses") {
  Mat contraction{{0.5, 0.0}, {0.0, -0.25}};
  SrgCloud cloud = cloud_of(contraction, PairingKind::L2Dot);

  CertificateReport lip = certify(cloud, OperatorProperty::Lipschitz, 0.5);
  CHECK(lip.verdict == CertificateReport::Verdict::HoldsOnSamples);
  CHECK(lip.margin >= -1e-9);

  CertificateReport tight = certify(cloud, OperatorProperty::Lipschitz, 0.4);
  CHECK(tight.verdict == CertificateReport::Verdict::Violated);
  REQUIRE(tight.witness.has_value());
  CHECK(tight.witness->gain > 0.4);

  // re z ranges over [-0.25, 0.5] for this diagonal matrix
  CertificateReport onesided = certify(cloud, OperatorProperty::OneSided, 0.5);
  CHECK(onesided.verdict == CertificateReport::Verdict::HoldsOnSamples);
  CertificateReport strong =
      certify(cloud, OperatorProperty::StronglyMonotone, 0.0);
  CHECK(strong.verdict == CertificateReport::Verdict::Violated);

  Mat positive{{1.0, 0.0}, {0.0, 2.0}};
  SrgCloud pos = cloud_of(positive, PairingKind::L2Dot);
  CertificateReport mono =
      certify(pos, OperatorProperty::StronglyMonotone, 0.9);
  CHECK(mono.verdict == CertificateReport::Verdict::HoldsOnSamples);
  CHECK(mono.margin >= -1e-9);
}

TEST_CASE("certificate parameter ranges are enforced") {
  SrgCloud cloud = cloud_of(Mat::identity(2), PairingKind::L2Dot);
  CHECK_THROWS_AS(certify(cloud, OperatorProperty::Lipschitz, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(certify(cloud, OperatorProperty::Lipschitz, -1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(certify(cloud, OperatorProperty::StronglyMonotone, -0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(certify(cloud, OperatorProperty::Cocoercive, 0.0),
                  std::invalid_argument);
  CHECK_NOTHROW(certify(cloud, OperatorProperty::OneSided, -3.0));
}

TEST_CASE("region membership matches the generating inequalities") {
  Mat a{{1.0, -2.0}, {0.5, 0.75}};
  for (PairingKind kind : kAllPairings) {
    auto recs = draw_increments(Operator::matrix(a), IncrementSampler::mixed(),
                                1000, kSeed + 5, kind);
    SrgCloud cloud = cloud_from_increments(recs, kind, Side::Left,
                                           {"mixed", recs.size(), kSeed + 5});
    REQUIRE(cloud.points.size() == recs.size());
    const double params[] = {0.5, 1.0, 2.0};
    for (std::size_t i = 0; i < recs.size(); ++i) {
      const IncrementRecord& r = recs[i];
      const SrgPoint& p = cloud.points[i];
      if (r.u_negligible || p.is_infinity) continue;
      double nu = norm(r.u, kind);
      double nv = norm(r.v, kind);
      double pvu = pair(r.v, r.u, kind);
      // both sides of each equivalence are read at the same normalized
      // scale so a shared 1e-12 tolerance never splits a boundary point
      for (double ell : params) {
        bool region = p.gain <= ell + 1e-12;
        bool inequality = nv / nu <= ell + 1e-12;
        CHECK(region == inequality);
      }
      for (double c : params) {
        bool region = p.re() <= c + 1e-12;
        bool inequality = pvu / (nu * nu) <= c + 1e-12;
        CHECK(region == inequality);
      }
      for (double mu : params) {
        bool region = p.re() >= mu - 1e-12;
        bool inequality = pvu / (nu * nu) >= mu - 1e-12;
        CHECK(region == inequality);
      }
    }
  }
}

TEST_CASE("cocoercivity region is the disk through the origin") {
  Mat a{{1.0, -2.0}, {0.5, 0.75}};
  for (PairingKind kind : kAllPairings) {
    auto recs = draw_increments(Operator::matrix(a), IncrementSampler::mixed(),
                                1000, kSeed + 9, kind);
    SrgCloud cloud = cloud_from_increments(recs, kind, Side::Left,
                                           {"mixed", recs.size(), kSeed + 9});
    for (double gamma : {0.5, 1.0, 2.0}) {
      double r = 1.0 / (2.0 * gamma);
      for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        const SrgPoint& p = cloud.points[i];
        if (p.is_infinity) continue;
        double re = p.re();
        double dist =
            std::sqrt(std::max(0.0, p.gain * p.gain - 2.0 * r * re + r * r));
        bool in_disk = dist <= r + 1e-12;
        bool inequality = re >= gamma * p.gain * p.gain - 1e-12;
        // the two descriptions agree away from the knife edge
        if (std::abs(dist - r) > 1e-9) CHECK(in_disk == inequality);
      }
    }
  }
}

TEST_CASE("infinity handling in certificates") {
  SrgCloud cloud;
  cloud.spec = PairingKind::L2Dot;
  cloud.side = Side::Left;
  cloud.points.push_back({1.0, 0.0, false, 0});
  SrgPoint inf_point;
  inf_point.gain = std::numeric_limits<double>::infinity();
  inf_point.is_infinity = true;
  inf_point.sample_index = 1;
  cloud.points.push_back(inf_point);

  CertificateReport lip = certify(cloud, OperatorProperty::Lipschitz, 5.0);
  CHECK(lip.verdict == CertificateReport::Verdict::Violated);
  CertificateReport coco = certify(cloud, OperatorProperty::Cocoercive, 0.5);
  CHECK(coco.verdict == CertificateReport::Verdict::Violated);
  // half-plane properties ignore infinity: its inequality degenerates
  CertificateReport onesided = certify(cloud, OperatorProperty::OneSided, 1.0);
  CHECK(onesided.verdict == CertificateReport::Verdict::HoldsOnSamples);
  CertificateReport strong =
      certify(cloud, OperatorProperty::StronglyMonotone, 0.5);
  CHECK(strong.verdict == CertificateReport::Verdict::HoldsOnSamples);
}

TEST_CASE("property names round trip") {
  for (OperatorProperty p :
       {OperatorProperty::Lipschitz, OperatorProperty::OneSided,
        OperatorProperty::StronglyMonotone, OperatorProperty::Cocoercive}) {
    CHECK(parse_property(property_name(p)) == p);
  }
  CHECK_FALSE(parse_property("bounded").has_value());
}

TEST_CASE("contraction factor tracks the largest gain") {
  Mat half = 0.5 * Mat::identity(3);
  ContractionFactor cf = contraction_factor(cloud_of(half, PairingKind::L2Dot));
  CHECK_FALSE(cf.at_infinity);
  CHECK(close(cf.value, 0.5, 1e-12));
}

TEST_CASE("sigma vanishes for radial maps and stays below two") {
  for (PairingKind kind :
       {PairingKind::L2Dot, PairingKind::L1Sign, PairingKind::LInfMinIndex}) {
    double s_id = estimate_sigma(Operator::matrix(Mat::identity(3)), kind,
                                 IncrementSampler::mixed(), 500, kSeed);
    CHECK(s_id <= 1e-9);
    double s_neg = estimate_sigma(Operator::matrix(-1.0 * Mat::identity(3)),
                                  kind, IncrementSampler::mixed(), 500, kSeed);
    CHECK(s_neg <= 1e-9);
    Mat a{{1.0, 2.0, 0.0}, {0.0, -1.0, 1.0}, {0.5, 0.0, 2.0}};
    double s_a = estimate_sigma(Operator::matrix(a), kind,
                                IncrementSampler::mixed(), 500, kSeed);
    CHECK(s_a >= 0.0);
    CHECK(s_a <= 2.0 + 1e-12);
  }
  CHECK_THROWS_AS(estimate_sigma(Operator::matrix(Mat::identity(2)),
                                 PairingKind::LInfMax,
                                 IncrementSampler::mixed(), 100, kSeed),
                  std::invalid_argument);
}

TEST_CASE("sigma estimates grow with the sample set") {
  Mat a{{1.0, 2.0}, {-0.5, 1.0}};
  auto recs = draw_increments(Operator::matrix(a), IncrementSampler::mixed(),
                              800, kSeed + 2, PairingKind::L2Dot);
  double s_small = sigma_from_increments(
      std::span<const IncrementRecord>(recs.data(), 200), PairingKind::L2Dot);
  double s_big = sigma_from_increments(recs, PairingKind::L2Dot);
  CHECK(s_small <= s_big + 1e-15);
}

TEST_CASE("operator evaluation failures carry the sample index") {
  Operator bad = Operator::pointwise(2, "bad", [](const Vec& x) -> Vec {
    if (x[0] > 0.0) throw std::runtime_error("loss of feasibility");
    return x;
  });
  CHECK_THROWS_WITH_AS(
      sample_srg(bad, PairingKind::L2Dot, Side::Left,
                 IncrementSampler::gaussian(), 50, kSeed),
      doctest::Contains("operator evaluation failed at sample"),
      std::runtime_error);
}
