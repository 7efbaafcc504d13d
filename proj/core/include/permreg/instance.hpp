#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <optional>

#include "permreg/permutation.hpp"

namespace permreg {

/// One realization of the observation model y = P* A x* + w with an n x d
/// i.i.d. standard Gaussian design, Gaussian noise of standard deviation
/// sigma, and an unknown true permutation P*.
struct ProblemInstance {
  int n = 0;
  int d = 0;
  Eigen::MatrixXd A;       // n x d
  Eigen::VectorXd x_star;  // d
  Permutation pi_star = Permutation::identity(1);
  double sigma = 0.0;
  Eigen::VectorXd w;  // n
  Eigen::VectorXd y;  // n
  std::uint64_t seed = 0;
};

/// How the true permutation of an instance is chosen.
struct TruthSpec {
  // nullopt: draw uniformly from the instance's Truth substream.
  std::optional<Permutation> fixed;
  static TruthSpec random() { return TruthSpec{}; }
  static TruthSpec exactly(Permutation p) { return TruthSpec{std::move(p)}; }
};

/// Draws A and w from independent substreams of `seed` and assembles y.
/// Requires 1 <= d < n and sigma >= 0. Fully deterministic given seed.
ProblemInstance generate_instance(int n, int d, const Eigen::VectorXd& x_star, double sigma,
                                  const TruthSpec& truth, std::uint64_t seed);

/// ||x*||^2 / sigma^2; +infinity when sigma == 0.
double snr_of(const ProblemInstance& inst);

/// log(1 + snr) / log(n), natural logs; +infinity when sigma == 0.
/// Requires n >= 2.
double gamma_of(const ProblemInstance& inst);

/// snr solving log(1+snr)/log(n) = gamma, i.e. n^gamma - 1.
double snr_for_gamma(int n, double gamma);

}  // namespace permreg
