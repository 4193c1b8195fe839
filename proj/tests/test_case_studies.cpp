#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "srgkit/case_studies.hpp"
#include "srgkit/geometry.hpp"
#include "srgkit/srg.hpp"
#include "support.hpp"

using namespace srgkit;
using testsupport::close;
using testsupport::close_rel;
using testsupport::random_vec;

TEST_CASE("demo matrices and their pinned norms") {
  Mat a1 = matrix_a1();
  CHECK(a1(0, 1) == -2.0);
  CHECK(a1(2, 2) == 3.0);
  Mat ainf = matrix_ainf();
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) CHECK(ainf(i, j) == a1(j, i));
  }
  CHECK(log_norm_closed_form(a1, PairingKind::L1Sign) == 6.0);
  CHECK(log_norm_closed_form(-1.0 * a1, PairingKind::L1Sign) == 0.0);
  CHECK(log_norm_closed_form(ainf, PairingKind::LInfMax) == 6.0);
  CHECK(log_norm_closed_form(-1.0 * ainf, PairingKind::LInfMax) == 0.0);
}

TEST_CASE("cubic companion evaluates columnwise") {
  Operator f1 = cubic_diag_operator(matrix_a1(), "f1");
  CHECK(f1.dim() == 3);
  CHECK(f1.label() == "f1");
  // e3: diagonal contributes 3 * (1 + 1) = 6, off-diagonal column adds
  // (-2, -1, 0)
  Vec y = f1(Vec::unit(3, 2));
  CHECK(y[0] == -2.0);
  CHECK(y[1] == -1.0);
  CHECK(y[2] == 6.0);
  // at the origin the cubic vanishes with the matrix
  CHECK(f1(Vec::zeros(3)).is_zero());
}

TEST_CASE("cubic companion dominates the linear part radially") {
  // [f(x) - f(y), x - y] >= [a (x - y), x - y] - like expansivity for the
  // sign pairing, checked through the monotone certificates below; here we
  // pin the pointwise inequality phi(s) - phi(t) >= s - t for s >= t
  for (std::uint64_t i = 0; i < 1000; ++i) {
    Vec st = random_vec(911, i, 2);
    double s = std::max(st[0], st[1]);
    double t = std::min(st[0], st[1]);
    double phi_s = s + s * s * s;
    double phi_t = t + t * t * t;
    CHECK(phi_s - phi_t >= s - t - 1e-12);
  }
}

TEST_CASE("sign-pairing monotonicity transfers from a1 to its companion") {
  Operator f1 = cubic_diag_operator(matrix_a1(), "f1");
  SrgCloud cloud = sample_srg(f1, PairingKind::L1Sign, Side::Left,
                              IncrementSampler::mixed(), 2000, 42);
  CertificateReport mono =
      certify(cloud, OperatorProperty::StronglyMonotone, 0.0);
  CHECK(mono.verdict == CertificateReport::Verdict::HoldsOnSamples);

  Operator finf = cubic_diag_operator(matrix_ainf(), "finf");
  SrgCloud cloud_inf = sample_srg(finf, PairingKind::LInfMax, Side::Left,
                                  IncrementSampler::mixed(), 2000, 42);
  CertificateReport mono_inf =
      certify(cloud_inf, OperatorProperty::StronglyMonotone, 0.0);
  CHECK(mono_inf.verdict == CertificateReport::Verdict::HoldsOnSamples);

  // but not under the dot pairing, where the symmetric part is indefinite
  SrgCloud cloud_l2 = sample_srg(f1, PairingKind::L2Dot, Side::Left,
                                 IncrementSampler::mixed(), 2000, 42);
  CertificateReport mono_l2 =
      certify(cloud_l2, OperatorProperty::StronglyMonotone, 0.0);
  CHECK(mono_l2.verdict == CertificateReport::Verdict::Violated);
}

TEST_CASE("random mdps are valid and reproducible") {
  Mdp mdp = random_mdp(8, 3, 42, 0.7);
  CHECK(mdp.n_states == 8);
  CHECK(mdp.n_actions == 3);
  CHECK(mdp.discount == 0.7);
  CHECK(mdp.rewards.size() == 24);
  CHECK(mdp.transitions.size() == 192);
  for (double r : mdp.rewards) {
    CHECK(r >= 0.0);
    CHECK(r <= 1.0);
  }
  for (std::size_t s = 0; s < 8; ++s) {
    for (std::size_t a = 0; a < 3; ++a) {
      double row = 0.0;
      for (std::size_t s2 = 0; s2 < 8; ++s2) {
        double p = mdp.transition(s, a, s2);
        CHECK(p >= 0.0);
        row += p;
      }
      CHECK(close(row, 1.0, 1e-12));
    }
  }

  Mdp again = random_mdp(8, 3, 42, 0.7);
  CHECK(again.rewards == mdp.rewards);
  CHECK(again.transitions == mdp.transitions);
  Mdp other = random_mdp(8, 3, 43, 0.7);
  CHECK(other.rewards != mdp.rewards);

  Mdp tiny = random_mdp(1, 1, 7, 0.5);
  CHECK(close(tiny.transition(0, 0, 0), 1.0, 1e-12));
}

TEST_CASE("policy reductions pick the chosen action rows") {
  Mdp mdp = random_mdp(5, 2, 11, 0.9);
  Policy pi{std::vector<std::size_t>(5, 1)};
  Mat p = policy_transition(mdp, pi);
  Vec r = policy_rewards(mdp, pi);
  for (std::size_t s = 0; s < 5; ++s) {
    CHECK(r[s] == mdp.reward(s, 1));
    for (std::size_t s2 = 0; s2 < 5; ++s2) {
      CHECK(p(s, s2) == mdp.transition(s, 1, s2));
    }
  }
}

TEST_CASE("bellman apply matches its operator wrapper") {
  Mdp mdp = random_mdp(6, 3, 99, 0.7);
  Policy pi{std::vector<std::size_t>(6, 0)};
  Operator t = bellman_operator(mdp, pi);
  Operator treg = regularized_bellman_operator(mdp, pi, 0.25);
  CHECK(t.dim() == 6);
  for (std::uint64_t i = 0; i < 50; ++i) {
    Vec v = random_vec(321, i, 6);
    CHECK(t(v) == bellman_apply(mdp, pi, v));
    CHECK(treg(v) == regularized_bellman_apply(mdp, pi, 0.25, v));
  }
  // the regularizer moves each coordinate by at most alpha
  for (std::uint64_t i = 0; i < 50; ++i) {
    Vec v = random_vec(654, i, 6);
    Vec base = bellman_apply(mdp, pi, v);
    Vec reg = regularized_bellman_apply(mdp, pi, 0.25, v);
    for (std::size_t s = 0; s < 6; ++s) {
      CHECK(std::abs(reg[s] - base[s]) <= 0.25);
    }
  }
}

TEST_CASE("bellman increments contract in the max norm") {
  Mdp mdp = random_mdp(8, 3, 42, 0.7);
  Policy pi{std::vector<std::size_t>(8, 0)};
  Operator t = bellman_operator(mdp, pi);
  for (std::uint64_t i = 0; i < 1000; ++i) {
    Vec v = random_vec(777, 2 * i, 8);
    Vec w = random_vec(777, 2 * i + 1, 8);
    double num = norm(t(v) - t(w), PairingKind::LInfMax);
    double den = norm(v - w, PairingKind::LInfMax);
    CHECK(num <= 0.7 * den * (1.0 + 1e-12));
  }
}

TEST_CASE("policy value is the bellman fixed point") {
  Mdp mdp = random_mdp(8, 3, 42, 0.7);
  Policy pi{std::vector<std::size_t>(8, 0)};
  Vec v = policy_value(mdp, pi);
  Vec tv = bellman_apply(mdp, pi, v);
  CHECK(norm(tv - v, PairingKind::LInfMax) <= 1e-10);
  // bounded by the crude reward bound rmax / (1 - gamma)
  double vmax = norm(v, PairingKind::LInfMax);
  CHECK(vmax <= 1.0 / (1.0 - 0.7) + 1e-9);
}

TEST_CASE("value iteration converges at the discount rate") {
  Mdp mdp = random_mdp(8, 3, 42, 0.7);
  Policy pi{std::vector<std::size_t>(8, 0)};
  Operator t = bellman_operator(mdp, pi);
  ValueIterationResult res = value_iteration(t, Vec::zeros(8), 2000, 1e-10);
  CHECK(res.converged);
  CHECK(res.iterations >= 2);
  CHECK(res.residual_norms.size() == res.iterations);
  CHECK(res.observed_rate <= 0.7 + 1e-3);
  CHECK(res.observed_rate > 0.0);
  Vec exact = policy_value(mdp, pi);
  CHECK(norm(res.fixed_point - exact, PairingKind::LInfMax) <= 1e-8);

  // a constant map lands in one step and reports convergence
  Operator constant = Operator::pointwise(3, "const", [](const Vec& x) {
    (void)x;
    return Vec{1.0, 2.0, 3.0};
  });
  ValueIterationResult one = value_iteration(constant, Vec::zeros(3), 50,
                                             1e-12);
  CHECK(one.converged);
  CHECK(one.fixed_point == Vec{1.0, 2.0, 3.0});

  // the regularized operator still converges, a bit more slowly
  Operator treg = regularized_bellman_operator(mdp, pi, 0.25);
  ValueIterationResult reg = value_iteration(treg, Vec::zeros(8), 4000, 1e-10);
  CHECK(reg.converged);
  CHECK(reg.observed_rate <= 0.95 + 1e-3);
  Vec fixed_residual = regularized_bellman_apply(mdp, pi, 0.25,
                                                 reg.fixed_point) -
                       reg.fixed_point;
  CHECK(norm(fixed_residual, PairingKind::LInfMax) <= 1e-8);
}

TEST_CASE("regularizer is bounded sign-reversing and nonexpansive") {
  auto psi = [](double t) { return -t / (1.0 + std::abs(t)); };
  for (std::uint64_t i = 0; i < 1000; ++i) {
    Vec st = random_vec(1212, i, 2);
    double s = 10.0 * st[0];
    double t = 10.0 * st[1];
    CHECK(std::abs(psi(s)) < 1.0);
    CHECK(psi(s) * s <= 0.0);
    CHECK(std::abs(psi(s) - psi(t)) <= std::abs(s - t) * (1.0 + 1e-12));
  }
}

TEST_CASE("bellman clouds certify the discount as a gain bound") {
  Mdp mdp = random_mdp(8, 3, 42, 0.7);
  Policy pi{std::vector<std::size_t>(8, 0)};
  Operator t = bellman_operator(mdp, pi);
  SrgCloud cloud = sample_srg(t, PairingKind::LInfMax, Side::Left,
                              IncrementSampler::value_range(1.0 / 0.3), 2000,
                              42);
  ContractionFactor cf = contraction_factor(cloud);
  CHECK_FALSE(cf.at_infinity);
  CHECK(cf.value <= 0.7 + 1e-9);
  CertificateReport lip = certify(cloud, OperatorProperty::Lipschitz, 0.7);
  CHECK(lip.verdict == CertificateReport::Verdict::HoldsOnSamples);

  Operator treg = regularized_bellman_operator(mdp, pi, 0.25);
  SrgCloud reg_cloud = sample_srg(treg, PairingKind::LInfMax, Side::Left,
                                  IncrementSampler::value_range(1.0 / 0.3),
                                  2000, 42);
  ContractionFactor reg_cf = contraction_factor(reg_cloud);
  CHECK(reg_cf.value <= 0.95 + 1e-9);
}

TEST_CASE("mdp input validation") {
  Mdp mdp = random_mdp(4, 2, 5, 0.9);
  Policy wrong{std::vector<std::size_t>(3, 0)};
  CHECK_THROWS_AS(policy_transition(mdp, wrong), std::invalid_argument);
  Policy bad_action{std::vector<std::size_t>(4, 7)};
  CHECK_THROWS_AS(policy_rewards(mdp, bad_action), std::invalid_argument);
  Policy pi{std::vector<std::size_t>(4, 0)};
  CHECK_THROWS_AS(bellman_apply(mdp, pi, Vec::zeros(3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(random_mdp(0, 2, 1, 0.9), std::invalid_argument);
  CHECK_THROWS_AS(random_mdp(2, 2, 1, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(regularized_bellman_operator(mdp, pi, -0.1),
                  std::invalid_argument);
}
