#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "permreg/rng.hpp"

namespace permreg {

/// Evaluation of one closed-form recovery condition: the two sides of the
/// inequality with the direction baked into `satisfied`, plus a plain-text
/// statement of what satisfaction implies.
struct BoundReport {
  std::string name;  // thm1 | thm2 | prop1 | thm3 | chi2_tail | proj_tail | lemma7_eigs
  std::map<std::string, double> inputs;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
  std::string guarantee;
};

/// Sufficient condition for exact recovery by the maximum-likelihood
/// estimator: log(snr) >= (c1 * n/(n-d) + epsilon) * log(n).
/// Requires d < n, 0 < epsilon < sqrt(n), c1 > 0, snr > 0.
BoundReport sufficient_condition_exact(int n, int d, double snr, double epsilon, double c1 = 1.0);

/// Strong converse: 2 + log(1+snr) <= (2-delta) * log(n) forces every
/// estimator to fail with probability -> 1. Requires delta in (0,2), n >= 2.
BoundReport strong_converse(int n, double snr, double delta);

/// Side-information converse: log(1+snr) <= (8/9) * log(n/8) forces error
/// probability >= 1/2 even knowing the truth is within Hamming distance 2 of
/// the identity. Requires n >= 9 (std::domain_error otherwise).
BoundReport side_information_converse(int n, double snr);

/// Approximate-recovery converse: log(1+snr) <= ((n-D+1)/n) * log((n-D+1)/(2e))
/// forces P(d_H >= D) >= 1/2. Requires 2 < D <= n-1.
BoundReport approximate_recovery_converse(int n, double snr, int distortion);

/// Chernoff bound on the lower tail of a chi-square variable with ell
/// degrees of freedom: P(Z_ell <= p) <= (p/ell * exp(1 - p/ell))^(ell/2).
/// Requires 0 <= p <= ell (std::domain_error above ell).
double chi2_lower_tail_bound(int ell, double p);

/// Upper-tail bound for the squared norm of a random d-dimensional
/// projection of a fixed n-vector: P(||P x||^2 >= beta d/n ||x||^2) <=
/// beta^(d/2) * (1 + (1-beta)d/(n-d))^((n-d)/2). Requires beta > 1,
/// 1 <= d < n. Returns 0 where the base turns negative (the event is empty).
double projection_tail_bound(int n, int d, double beta);

/// Eigenvalues of the normalized second-moment matrix of observations drawn
/// with a radius-hbar Hamming-ball truth (unit diagonal, constant
/// off-diagonal), plus the determinant bound scaled by
/// (sigma^2 + ||x*||^2)^n.
struct CovarianceEigs {
  double lambda1 = 0.0;      // 1 + (n-hbar)(n-1)/n + hbar(n-1)/n^2
  double lambda_rest = 0.0;  // hbar/n - hbar/n^2, multiplicity n-1
  double det_bound = 0.0;    // snr_plus^n * (1+n) * (hbar/n)^(n-1)
};
CovarianceEigs mixture_covariance_eigs(int n, double snr_plus, int hbar);

/// The analytic matrix behind mixture_covariance_eigs: unit diagonal,
/// off-diagonal (n-hbar)/n + hbar/n^2.
Eigen::MatrixXd mixture_covariance_matrix(int n, int hbar);

/// Outcome of one Monte Carlo domination check.
struct VerifierReport {
  std::string name;
  bool passed = false;
  std::size_t checks = 0;
  std::size_t violations = 0;
  std::string detail;
};

/// Empirical chi-square lower-tail CDF at each p in p_grid versus the
/// Chernoff bound, with 3 binomial standard errors of slack.
/// Requires samples >= 10000.
VerifierReport verify_chi2_bound_mc(int ell, const std::vector<double>& p_grid,
                                    std::size_t samples, RngEngine& rng);

/// Empirical frequency of {||P x||^2 >= beta d/n} for a fixed unit vector
/// and uniformly random d-dimensional subspaces versus the projection tail
/// bound, with 3 binomial standard errors of slack.
VerifierReport verify_projection_bound_mc(int n, int d, const std::vector<double>& beta_grid,
                                          std::size_t samples, RngEngine& rng);

/// Empirical fixed-point frequency of the two-step Hamming-ball sampler
/// against the closed form (n-hbar)/n + hbar/n^2, tolerance 0.01.
VerifierReport verify_hamming_ball_fixed_point(int n, int hbar, std::size_t samples,
                                               RngEngine& rng);

/// Independent-set partition of random derangements: every part independent
/// in G_pi (checked edge by edge) and min part size >= floor(k/3).
VerifierReport verify_independent_partition(std::size_t trials, std::size_t k_min,
                                            std::size_t k_max, RngEngine& rng);

/// Dense eigensolves of the analytic mixture covariance versus the closed
/// forms (relative tolerance 1e-9) and its determinant versus
/// (1+n)(hbar/n)^(n-1), for all 2 <= hbar <= n <= n_max.
VerifierReport verify_covariance_eigs(int n_max);

}  // namespace permreg
