#include "srgkit/case_studies.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>

#include "srgkit/pairings.hpp"
#include "srgkit/rng.hpp"

namespace srgkit {

namespace {

constexpr std::uint64_t kStreamMdp = 0x4d44502d53454544ULL;

void check_policy(const Mdp& mdp, const Policy& pi) {
  if (pi.action.size() != mdp.n_states)
    throw std::invalid_argument("policy must pick an action for every state");
  for (std::size_t a : pi.action)
    if (a >= mdp.n_actions)
      throw std::invalid_argument("policy action out of range");
}

}  // namespace

Mat matrix_a1() {
  return Mat{{0.0, -2.0, -2.0},
             {0.0, 2.0, -1.0},
             {0.0, 0.0, 3.0}};
}

Mat matrix_ainf() { return matrix_a1().transposed(); }

Operator cubic_diag_operator(const Mat& a, std::string label) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("cubic companion needs a square matrix");
  Mat m = a;
  return Operator::pointwise(m.rows(), std::move(label), [m](const Vec& x) {
    std::vector<double> out(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      double acc = m(i, i) * (x[i] + x[i] * x[i] * x[i]);
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (j != i) acc += m(i, j) * x[j];
      out[i] = acc;
    }
    return Vec(std::move(out));
  });
}

Mdp random_mdp(std::size_t n_states, std::size_t n_actions,
               std::uint64_t seed, double discount) {
  if (n_states < 1 || n_actions < 1)
    throw std::invalid_argument("mdp needs at least one state and action");
  if (!(discount > 0.0 && discount < 1.0))
    throw std::invalid_argument("discount must lie strictly inside (0,1)");

  Mdp mdp;
  mdp.n_states = n_states;
  mdp.n_actions = n_actions;
  mdp.discount = discount;
  mdp.rewards.resize(n_states * n_actions);
  mdp.transitions.resize(n_states * n_actions * n_states);

  auto eng = engine_for(seed, kStreamMdp, 0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);

  for (double& r : mdp.rewards) r = unit(eng);
  for (std::size_t row = 0; row < n_states * n_actions; ++row) {
    double total = 0.0;
    for (std::size_t s2 = 0; s2 < n_states; ++s2) {
      double e = expo(eng);
      mdp.transitions[row * n_states + s2] = e;
      total += e;
    }
    for (std::size_t s2 = 0; s2 < n_states; ++s2)
      mdp.transitions[row * n_states + s2] /= total;
  }
  return mdp;
}

Mat policy_transition(const Mdp& mdp, const Policy& pi) {
  check_policy(mdp, pi);
  Mat p(mdp.n_states, mdp.n_states);
  for (std::size_t s = 0; s < mdp.n_states; ++s)
    for (std::size_t s2 = 0; s2 < mdp.n_states; ++s2)
      p(s, s2) = mdp.transition(s, pi.action[s], s2);
  return p;
}

Vec policy_rewards(const Mdp& mdp, const Policy& pi) {
  check_policy(mdp, pi);
  std::vector<double> r(mdp.n_states);
  for (std::size_t s = 0; s < mdp.n_states; ++s)
    r[s] = mdp.reward(s, pi.action[s]);
  return Vec(std::move(r));
}

Vec bellman_apply(const Mdp& mdp, const Policy& pi, const Vec& v) {
  check_policy(mdp, pi);
  if (v.size() != mdp.n_states)
    throw std::invalid_argument("value vector dimension mismatch");
  std::vector<double> out(mdp.n_states);
  for (std::size_t s = 0; s < mdp.n_states; ++s) {
    double acc = 0.0;
    for (std::size_t s2 = 0; s2 < mdp.n_states; ++s2)
      acc += mdp.transition(s, pi.action[s], s2) * v[s2];
    out[s] = mdp.reward(s, pi.action[s]) + mdp.discount * acc;
  }
  return Vec(std::move(out));
}

Vec regularized_bellman_apply(const Mdp& mdp, const Policy& pi, double alpha,
                              const Vec& v) {
  if (alpha <= 0.0)
    throw std::invalid_argument("regularization weight must be positive");
  Vec base = bellman_apply(mdp, pi, v);
  std::vector<double> out(mdp.n_states);
  for (std::size_t s = 0; s < mdp.n_states; ++s)
    out[s] = base[s] + alpha * (-v[s] / (1.0 + std::abs(v[s])));
  return Vec(std::move(out));
}

Operator bellman_operator(const Mdp& mdp, const Policy& pi) {
  check_policy(mdp, pi);
  return Operator::pointwise(mdp.n_states, "bellman", [mdp, pi](const Vec& v) {
    return bellman_apply(mdp, pi, v);
  });
}

Operator regularized_bellman_operator(const Mdp& mdp, const Policy& pi,
                                      double alpha) {
  check_policy(mdp, pi);
  if (alpha <= 0.0)
    throw std::invalid_argument("regularization weight must be positive");
  return Operator::pointwise(mdp.n_states, "bellman_reg",
                             [mdp, pi, alpha](const Vec& v) {
                               return regularized_bellman_apply(mdp, pi, alpha,
                                                                v);
                             });
}

Vec policy_value(const Mdp& mdp, const Policy& pi) {
  Mat p = policy_transition(mdp, pi);
  Mat system = Mat::identity(mdp.n_states) + (-mdp.discount) * p;
  return system.solve(policy_rewards(mdp, pi));
}

ValueIterationResult value_iteration(const Operator& t, Vec v0,
                                     std::size_t max_iter, double tol_fix) {
  if (v0.size() != t.dim())
    throw std::invalid_argument("initial point dimension mismatch");

  ValueIterationResult result;
  Vec v = std::move(v0);
  for (std::size_t k = 0; k < max_iter; ++k) {
    Vec next = t(v);
    double res = norm(next - v, PairingKind::LInfMax);
    result.residual_norms.push_back(res);
    v = std::move(next);
    ++result.iterations;
    if (res <= tol_fix) {
      result.converged = true;
      break;
    }
  }
  result.fixed_point = std::move(v);

  const auto& r = result.residual_norms;
  if (r.size() >= 2 && r.front() > 0.0)
    result.observed_rate =
        std::pow(r.back() / r.front(), 1.0 / double(r.size() - 1));
  return result;
}

}  // namespace srgkit
