#pragma once

#include <Eigen/Core>

#include "permreg/instance.hpp"
#include "permreg/permutation.hpp"

namespace permreg {

/// Relative singular-value cutoff below which a design is treated as
/// rank-deficient.
inline constexpr double kRankTolerance = 1e-10;

/// Projection statistics for a candidate permutation against an instance.
struct ResidualStatistics {
  double objective = 0.0;  // || P_perp(pi A) y ||^2
  double delta = 0.0;      // objective(pi) - objective(pi*)
  double t_pi = 0.0;       // || P_perp(pi A) pi* A x* ||^2
};

/// Squared norm of the component of y orthogonal to the column space of the
/// row-permuted design, computed via an orthogonal factorization; equals
/// min_x || y - (pi A) x ||^2.
///
/// Throws DegenerateDesignError when the smallest singular value of A falls
/// below kRankTolerance times the largest.
double projection_residual(const Eigen::VectorXd& y, const Eigen::MatrixXd& A,
                           const Permutation& p);

/// Least-squares coefficient fit of y against the row-permuted design.
Eigen::VectorXd least_squares_fit(const Eigen::VectorXd& y, const Eigen::MatrixXd& A,
                                  const Permutation& p);

/// Objective, preference gap versus the true permutation, and the noiseless
/// cross-projection term for a candidate permutation. Also cross-checks that
/// the truth residual of y equals that of w (the signal is annihilated by the
/// true projection); a violation throws std::logic_error.
ResidualStatistics delta_statistic(const ProblemInstance& inst, const Permutation& p);

namespace detail {

/// Residual for a design already known to have full column rank (singular
/// values are invariant under row permutation, so enumeration loops check
/// rank once and then call this).
double residual_full_rank(const Eigen::VectorXd& y, const Eigen::MatrixXd& permuted_design);

/// Throws DegenerateDesignError if A is rank-deficient at kRankTolerance.
void require_full_rank(const Eigen::MatrixXd& A);

}  // namespace detail

}  // namespace permreg
