#pragma once

#include <Eigen/Core>

#include <optional>
#include <vector>

#include "permreg/permutation.hpp"
#include "permreg/residual.hpp"
#include "permreg/rng.hpp"

namespace permreg {

/// Output of any permutation estimator.
struct EstimationResult {
  Permutation pi_hat = Permutation::identity(1);
  Eigen::VectorXd x_hat;   // least-squares fit under pi_hat
  double objective = 0.0;  // || P_perp(pi_hat A) y ||^2
  bool exact = false;      // true iff no permutation has a smaller objective
  std::size_t iterations = 0;
  std::optional<std::size_t> hamming_to_truth;
};

/// Exact maximum-likelihood permutation for a one-column design, by rank
/// matching y against a and against -a and keeping the candidate with the
/// larger |a_pi . y|. O(n log n). Ties between the two candidates resolve to
/// the +a branch. Throws DegenerateDesignError when a == 0.
EstimationResult sort_mle_d1(const Eigen::VectorXd& y, const Eigen::VectorXd& a);

/// Exact minimizer of the projection residual over all n! permutations,
/// lexicographically smallest map among objective ties.
/// Throws EnumerationLimitError when n > max_n.
EstimationResult brute_force_mle(const Eigen::VectorXd& y, const Eigen::MatrixXd& A,
                                 int max_n = 10);

/// Rank-matching estimator given exact knowledge of x*: the minimizer of
/// || y - pi(A x*) ||^2, found by pairing sorted y with sorted A x*.
/// Equal entries pair in (value, index) order. The reported objective is the
/// projection residual at the matched permutation, so exact stays false.
EstimationResult oracle_x_estimator(const Eigen::VectorXd& y, const Eigen::MatrixXd& A,
                                    const Eigen::VectorXd& x_star);

struct AltMinOptions {
  int restarts = 10;   // first start is the identity, the rest uniform random
  int max_iters = 100;
  std::vector<double>* objective_trace = nullptr;  // per-iteration, best run only
};

/// Alternating minimization over (x, pi): exact least-squares step in x,
/// exact rank-matching step in pi. Objective is non-increasing; stops when
/// the permutation repeats or max_iters is hit; returns the best of
/// `restarts` runs. Heuristic: exact == false.
EstimationResult alternating_min(const Eigen::VectorXd& y, const Eigen::MatrixXd& A,
                                 RngEngine& rng, const AltMinOptions& opts = {});

namespace detail {

/// Permutation minimizing || y - z_pi ||^2 over all permutations: pairs the
/// r-th smallest of y with the r-th smallest of z (1-D assignment by
/// sorting). Deterministic under ties via (value, index) ordering.
Permutation rank_match(const Eigen::VectorXd& y, const Eigen::VectorXd& z);

}  // namespace detail

}  // namespace permreg
