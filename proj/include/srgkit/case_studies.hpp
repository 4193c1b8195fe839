#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "srgkit/operators.hpp"
#include "srgkit/vec.hpp"

namespace srgkit {

/// The dual pair of demo matrices: a1 is monotone for the sign pairing but
/// not in l2; ainf = a1 transposed plays the mirrored role for the max norm.
Mat matrix_a1();
Mat matrix_ainf();

/// Nonlinear companion of a matrix: x -> diag(a) phi(x) + offdiag(a) x with
/// phi(t) = t + t^3 applied componentwise. phi is sign-preserving and
/// expansive, so the map keeps the matrix's directional verdicts.
Operator cubic_diag_operator(const Mat& a, std::string label = "cubic");

struct Mdp {
  std::size_t n_states = 0;
  std::size_t n_actions = 0;
  std::vector<double> rewards;      // r[s * n_actions + a]
  std::vector<double> transitions;  // p[(s * n_actions + a) * n_states + s2]
  double discount = 0.0;

  double reward(std::size_t s, std::size_t a) const {
    return rewards[s * n_actions + a];
  }
  double transition(std::size_t s, std::size_t a, std::size_t s2) const {
    return transitions[(s * n_actions + a) * n_states + s2];
  }
};

struct Policy {
  std::vector<std::size_t> action;  // 0-based action per state
};

/// Transition rows drawn uniformly from the probability simplex (normalized
/// independent exponentials), rewards uniform on [0,1]. Reproducible from
/// the seed alone.
Mdp random_mdp(std::size_t n_states, std::size_t n_actions,
               std::uint64_t seed, double discount);

Mat policy_transition(const Mdp& mdp, const Policy& pi);
Vec policy_rewards(const Mdp& mdp, const Policy& pi);

/// v -> r_pi + discount * P_pi v
Vec bellman_apply(const Mdp& mdp, const Policy& pi, const Vec& v);

/// v -> bellman_apply(v) + alpha * psi(v), psi(t) = -t / (1 + |t|):
/// bounded, sign-reversing, 1-Lipschitz regularizer.
Vec regularized_bellman_apply(const Mdp& mdp, const Policy& pi, double alpha,
                              const Vec& v);

Operator bellman_operator(const Mdp& mdp, const Policy& pi);
Operator regularized_bellman_operator(const Mdp& mdp, const Policy& pi,
                                      double alpha);

/// Exact policy value (I - discount * P_pi)^{-1} r_pi.
Vec policy_value(const Mdp& mdp, const Policy& pi);

struct ValueIterationResult {
  Vec fixed_point;
  std::vector<double> residual_norms;  // max-norm steps between iterates
  double observed_rate = 0.0;          // geometric-mean residual ratio
  bool converged = false;
  std::size_t iterations = 0;
};

ValueIterationResult value_iteration(const Operator& t, Vec v0,
                                     std::size_t max_iter, double tol_fix);

}  // namespace srgkit
