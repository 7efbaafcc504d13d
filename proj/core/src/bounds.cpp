#include "permreg/bounds.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "permreg/permutation.hpp"

namespace permreg {

namespace {

double binomial_stderr(double p_hat, std::size_t samples) {
  return std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(samples));
}

}  // namespace

BoundReport sufficient_condition_exact(int n, int d, double snr, double epsilon, double c1) {
  if (n < 2 || d < 1 || d >= n)
    throw std::invalid_argument("sufficient_condition_exact: requires 1 <= d < n, n >= 2");
  if (!(epsilon > 0.0) || !(epsilon < std::sqrt(static_cast<double>(n))))
    throw std::invalid_argument("sufficient_condition_exact: requires 0 < epsilon < sqrt(n)");
  if (!(c1 > 0.0)) throw std::invalid_argument("sufficient_condition_exact: requires c1 > 0");
  if (!(snr > 0.0)) throw std::invalid_argument("sufficient_condition_exact: requires snr > 0");

  BoundReport r;
  r.name = "thm1";
  r.inputs = {{"n", double(n)}, {"d", double(d)}, {"snr", snr}, {"epsilon", epsilon}, {"c1", c1}};
  r.lhs = std::log(snr);
  r.rhs = (c1 * double(n) / double(n - d) + epsilon) * std::log(double(n));
  r.satisfied = r.lhs >= r.rhs;
  r.guarantee =
      "maximum-likelihood exact recovery fails with probability at most "
      "c2 * n^(-2*epsilon), up to absolute constants";
  return r;
}

BoundReport strong_converse(int n, double snr, double delta) {
  if (n < 2) throw std::invalid_argument("strong_converse: requires n >= 2");
  if (!(delta > 0.0) || !(delta < 2.0))
    throw std::invalid_argument("strong_converse: requires delta in (0, 2)");
  if (snr < 0.0) throw std::invalid_argument("strong_converse: requires snr >= 0");

  BoundReport r;
  r.name = "thm2";
  r.inputs = {{"n", double(n)}, {"snr", snr}, {"delta", delta}};
  r.lhs = 2.0 + std::log1p(snr);
  r.rhs = (2.0 - delta) * std::log(double(n));
  r.satisfied = r.lhs <= r.rhs;
  r.guarantee =
      "every estimator fails with probability at least 1 - c3 * exp(-c4 * n * delta), "
      "up to absolute constants";
  return r;
}

BoundReport side_information_converse(int n, double snr) {
  if (n < 9) throw std::domain_error("side_information_converse: requires n >= 9");
  if (snr < 0.0) throw std::invalid_argument("side_information_converse: requires snr >= 0");

  BoundReport r;
  r.name = "prop1";
  r.inputs = {{"n", double(n)}, {"snr", snr}};
  r.lhs = std::log1p(snr);
  r.rhs = (8.0 / 9.0) * std::log(double(n) / 8.0);
  r.satisfied = r.lhs <= r.rhs;
  r.guarantee =
      "every estimator errs with probability at least 1/2, even knowing the truth "
      "is within Hamming distance 2 of the identity";
  return r;
}

BoundReport approximate_recovery_converse(int n, double snr, int distortion) {
  if (!(distortion > 2) || distortion > n - 1)
    throw std::invalid_argument("approximate_recovery_converse: requires 2 < D <= n-1");
  if (snr < 0.0) throw std::invalid_argument("approximate_recovery_converse: requires snr >= 0");

  BoundReport r;
  r.name = "thm3";
  r.inputs = {{"n", double(n)}, {"snr", snr}, {"D", double(distortion)}};
  const double m = double(n - distortion + 1);
  r.lhs = std::log1p(snr);
  r.rhs = (m / double(n)) * std::log(m / (2.0 * std::exp(1.0)));
  r.satisfied = r.lhs <= r.rhs;
  r.guarantee =
      "every estimator lands at Hamming distance >= D from the truth with "
      "probability at least 1/2";
  return r;
}

double chi2_lower_tail_bound(int ell, double p) {
  if (ell < 1) throw std::invalid_argument("chi2_lower_tail_bound: requires ell >= 1");
  if (p < 0.0) throw std::invalid_argument("chi2_lower_tail_bound: requires p >= 0");
  if (p > double(ell))
    throw std::domain_error("chi2_lower_tail_bound: only valid for p <= ell");
  if (p == 0.0) return 0.0;
  const double ratio = p / double(ell);
  return std::pow(ratio * std::exp(1.0 - ratio), double(ell) / 2.0);
}

double projection_tail_bound(int n, int d, double beta) {
  if (d < 1 || d >= n) throw std::invalid_argument("projection_tail_bound: requires 1 <= d < n");
  if (!(beta > 1.0)) throw std::domain_error("projection_tail_bound: only valid for beta > 1");
  const double base = 1.0 + (1.0 - beta) * double(d) / double(n - d);
  if (base <= 0.0) return 0.0;  // beta >= n/d: the event has probability zero
  return std::pow(beta, double(d) / 2.0) * std::pow(base, double(n - d) / 2.0);
}

CovarianceEigs mixture_covariance_eigs(int n, double snr_plus, int hbar) {
  if (n < 2 || hbar < 2 || hbar > n)
    throw std::invalid_argument("mixture_covariance_eigs: requires 2 <= hbar <= n");
  if (snr_plus <= 0.0)
    throw std::invalid_argument("mixture_covariance_eigs: requires snr_plus > 0");
  const double nn = double(n);
  const double hh = double(hbar);
  CovarianceEigs out;
  out.lambda1 = 1.0 + (nn - hh) * (nn - 1.0) / nn + hh * (nn - 1.0) / (nn * nn);
  out.lambda_rest = hh / nn - hh / (nn * nn);
  out.det_bound = std::pow(snr_plus, nn) * (1.0 + nn) * std::pow(hh / nn, nn - 1.0);
  return out;
}

Eigen::MatrixXd mixture_covariance_matrix(int n, int hbar) {
  if (n < 2 || hbar < 2 || hbar > n)
    throw std::invalid_argument("mixture_covariance_matrix: requires 2 <= hbar <= n");
  const double off = double(n - hbar) / double(n) + double(hbar) / (double(n) * double(n));
  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(n, n, off);
  m.diagonal().setOnes();
  return m;
}

VerifierReport verify_chi2_bound_mc(int ell, const std::vector<double>& p_grid,
                                    std::size_t samples, RngEngine& rng) {
  if (samples < 10000) throw std::invalid_argument("verify_chi2_bound_mc: requires samples >= 1e4");

  std::normal_distribution<double> unit_normal(0.0, 1.0);
  std::vector<double> draws(samples);
  for (auto& v : draws) {
    double s = 0.0;
    for (int j = 0; j < ell; ++j) {
      const double g = unit_normal(rng);
      s += g * g;
    }
    v = s;
  }
  std::sort(draws.begin(), draws.end());

  VerifierReport rep;
  rep.name = "chi2_tail(ell=" + std::to_string(ell) + ")";
  std::ostringstream detail;
  for (double p : p_grid) {
    const auto below = static_cast<std::size_t>(
        std::upper_bound(draws.begin(), draws.end(), p) - draws.begin());
    const double empirical = double(below) / double(samples);
    const double bound = chi2_lower_tail_bound(ell, p);
    const double slack = 3.0 * binomial_stderr(empirical, samples);
    ++rep.checks;
    if (empirical > bound + slack) {
      ++rep.violations;
      detail << "p=" << p << " empirical=" << empirical << " bound=" << bound << "; ";
    }
  }
  rep.passed = rep.violations == 0;
  rep.detail = detail.str();
  return rep;
}

VerifierReport verify_projection_bound_mc(int n, int d, const std::vector<double>& beta_grid,
                                          std::size_t samples, RngEngine& rng) {
  if (samples < 10000)
    throw std::invalid_argument("verify_projection_bound_mc: requires samples >= 1e4");

  std::normal_distribution<double> unit_normal(0.0, 1.0);
  std::vector<double> squared_norms(samples);
  for (auto& v : squared_norms) {
    Eigen::MatrixXd g(n, d);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < d; ++j) g(i, j) = unit_normal(rng);
    // Thin orthonormal basis of a uniformly random d-dimensional subspace;
    // for the fixed unit vector e1, ||P e1||^2 is the squared first row of Q.
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd thin_q = qr.householderQ() * Eigen::MatrixXd::Identity(n, d);
    v = thin_q.row(0).squaredNorm();
  }
  std::sort(squared_norms.begin(), squared_norms.end());

  VerifierReport rep;
  rep.name = "proj_tail(n=" + std::to_string(n) + ",d=" + std::to_string(d) + ")";
  std::ostringstream detail;
  for (double beta : beta_grid) {
    const double threshold = beta * double(d) / double(n);
    const auto below = static_cast<std::size_t>(
        std::lower_bound(squared_norms.begin(), squared_norms.end(), threshold) -
        squared_norms.begin());
    const double empirical = double(samples - below) / double(samples);
    const double bound = projection_tail_bound(n, d, beta);
    const double slack = 3.0 * binomial_stderr(empirical, samples);
    ++rep.checks;
    if (empirical > bound + slack) {
      ++rep.violations;
      detail << "beta=" << beta << " empirical=" << empirical << " bound=" << bound << "; ";
    }
  }
  rep.passed = rep.violations == 0;
  rep.detail = detail.str();
  return rep;
}

VerifierReport verify_hamming_ball_fixed_point(int n, int hbar, std::size_t samples,
                                               RngEngine& rng) {
  if (samples < 10000)
    throw std::invalid_argument("verify_hamming_ball_fixed_point: requires samples >= 1e4");

  std::size_t fixed = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const Permutation p =
        sample_hamming_ball_generative(static_cast<std::size_t>(n), static_cast<std::size_t>(hbar), rng);
    if (p(0) == 0) ++fixed;
  }
  const double empirical = double(fixed) / double(samples);
  const double formula = double(n - hbar) / double(n) + double(hbar) / (double(n) * double(n));

  VerifierReport rep;
  rep.name = "hprob(n=" + std::to_string(n) + ",hbar=" + std::to_string(hbar) + ")";
  rep.checks = 1;
  rep.violations = std::abs(empirical - formula) <= 0.01 ? 0 : 1;
  rep.passed = rep.violations == 0;
  std::ostringstream detail;
  detail << "empirical=" << empirical << " formula=" << formula;
  rep.detail = detail.str();
  return rep;
}

VerifierReport verify_independent_partition(std::size_t trials, std::size_t k_min,
                                            std::size_t k_max, RngEngine& rng) {
  if (k_min < 3 || k_max < k_min)
    throw std::invalid_argument("verify_independent_partition: requires 3 <= k_min <= k_max");

  VerifierReport rep;
  rep.name = "partition_lemma";
  std::ostringstream detail;
  std::uniform_int_distribution<std::size_t> pick_k(k_min, k_max);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t k = pick_k(rng);
    // Rejection-sample a derangement.
    Permutation p = Permutation::identity(k);
    for (;;) {
      p = sample_uniform(k, rng);
      bool derangement = true;
      for (std::size_t i = 0; i < k; ++i)
        if (p(i) == i) {
          derangement = false;
          break;
        }
      if (derangement) break;
    }

    const CyclePartition cp = independent_partition(p);
    std::vector<int> part_of(k, -1);
    for (int a = 0; a < 3; ++a)
      for (std::size_t v : cp.parts[static_cast<std::size_t>(a)]) part_of[v] = a;

    bool ok = true;
    for (std::size_t i = 0; i < k; ++i) {
      if (part_of[i] < 0) ok = false;                       // uncovered vertex
      if (part_of[i] == part_of[p(i)] && p(i) != i) ok = false;  // edge inside a part
    }
    const std::size_t min_size = std::min({cp.parts[0].size(), cp.parts[1].size(), cp.parts[2].size()});
    if (min_size < k / 3) ok = false;

    ++rep.checks;
    if (!ok) {
      ++rep.violations;
      detail << "k=" << k << " trial=" << t << "; ";
    }
  }
  rep.passed = rep.violations == 0;
  rep.detail = detail.str();
  return rep;
}

VerifierReport verify_covariance_eigs(int n_max) {
  VerifierReport rep;
  rep.name = "lemma7_eigs(n<=" + std::to_string(n_max) + ")";
  std::ostringstream detail;
  for (int n = 2; n <= n_max; ++n) {
    for (int hbar = 2; hbar <= n; ++hbar) {
      const Eigen::MatrixXd m = mixture_covariance_matrix(n, hbar);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
      const Eigen::VectorXd eigs = solver.eigenvalues();  // ascending
      const CovarianceEigs expected = mixture_covariance_eigs(n, 1.0, hbar);

      bool ok = std::abs(eigs(n - 1) - expected.lambda1) <= 1e-9 * std::abs(expected.lambda1);
      for (int i = 0; i + 1 < n && ok; ++i)
        ok = std::abs(eigs(i) - expected.lambda_rest) <= 1e-9 * std::abs(expected.lambda_rest);

      const double det = eigs.prod();
      if (det > expected.det_bound * (1.0 + 1e-12)) ok = false;

      ++rep.checks;
      if (!ok) {
        ++rep.violations;
        detail << "n=" << n << " hbar=" << hbar << "; ";
      }
    }
  }
  rep.passed = rep.violations == 0;
  rep.detail = detail.str();
  return rep;
}

}  // namespace permreg
