#include "permreg/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "permreg/errors.hpp"

namespace permreg {

namespace {

// Indices sorted by (value, index); the index tiebreak makes float ties
// deterministic.
std::vector<std::size_t> sorted_order(const Eigen::VectorXd& v) {
  std::vector<std::size_t> idx(static_cast<std::size_t>(v.size()));
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const double va = v[static_cast<Eigen::Index>(a)];
    const double vb = v[static_cast<Eigen::Index>(b)];
    if (va != vb) return va < vb;
    return a < b;
  });
  return idx;
}

double permuted_dot(const Eigen::VectorXd& a, const Permutation& p, const Eigen::VectorXd& y) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i)
    s += a[static_cast<Eigen::Index>(p(static_cast<std::size_t>(i)))] * y[i];
  return s;
}

}  // namespace

namespace detail {

Permutation rank_match(const Eigen::VectorXd& y, const Eigen::VectorXd& z) {
  if (y.size() != z.size()) throw std::invalid_argument("rank_match: size mismatch");
  const auto order_y = sorted_order(y);
  const auto order_z = sorted_order(z);
  std::vector<std::size_t> map(order_y.size());
  for (std::size_t r = 0; r < order_y.size(); ++r) map[order_y[r]] = order_z[r];
  return Permutation(std::move(map));
}

}  // namespace detail

EstimationResult sort_mle_d1(const Eigen::VectorXd& y, const Eigen::VectorXd& a) {
  if (y.size() != a.size()) throw std::invalid_argument("sort_mle_d1: size mismatch");
  if (a.squaredNorm() == 0.0)
    throw DegenerateDesignError("sort_mle_d1: design vector is identically zero");

  const Permutation pi_pos = detail::rank_match(y, a);
  const Permutation pi_neg = detail::rank_match(y, -a);
  const double score_pos = std::abs(permuted_dot(a, pi_pos, y));
  const double score_neg = std::abs(permuted_dot(a, pi_neg, y));

  EstimationResult res;
  res.pi_hat = (score_pos >= score_neg) ? pi_pos : pi_neg;
  res.x_hat = least_squares_fit(y, a, res.pi_hat);
  res.objective = projection_residual(y, a, res.pi_hat);
  res.exact = true;
  return res;
}

EstimationResult brute_force_mle(const Eigen::VectorXd& y, const Eigen::MatrixXd& A, int max_n) {
  const auto n = static_cast<int>(A.rows());
  if (y.size() != A.rows()) throw std::invalid_argument("brute_force_mle: size mismatch");
  if (n > max_n)
    throw EnumerationLimitError("brute_force_mle: n exceeds the enumeration cap");
  detail::require_full_rank(A);

  std::vector<std::size_t> map(static_cast<std::size_t>(n));
  std::iota(map.begin(), map.end(), std::size_t{0});

  // Lexicographic enumeration with strict improvement keeps the first (and
  // hence lexicographically smallest) minimizer among ties.
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_map = map;
  do {
    Eigen::MatrixXd permuted(n, A.cols());
    for (int i = 0; i < n; ++i)
      permuted.row(i) = A.row(static_cast<Eigen::Index>(map[static_cast<std::size_t>(i)]));
    const double value = detail::residual_full_rank(y, permuted);
    if (value < best) {
      best = value;
      best_map = map;
    }
  } while (std::next_permutation(map.begin(), map.end()));

  EstimationResult res;
  res.pi_hat = Permutation(std::move(best_map));
  res.x_hat = least_squares_fit(y, A, res.pi_hat);
  res.objective = best;
  res.exact = true;
  return res;
}

EstimationResult oracle_x_estimator(const Eigen::VectorXd& y, const Eigen::MatrixXd& A,
                                    const Eigen::VectorXd& x_star) {
  if (y.size() != A.rows() || x_star.size() != A.cols())
    throw std::invalid_argument("oracle_x_estimator: size mismatch");
  EstimationResult res;
  res.pi_hat = detail::rank_match(y, A * x_star);
  res.x_hat = least_squares_fit(y, A, res.pi_hat);
  res.objective = projection_residual(y, A, res.pi_hat);
  res.exact = false;
  return res;
}

EstimationResult alternating_min(const Eigen::VectorXd& y, const Eigen::MatrixXd& A,
                                 RngEngine& rng, const AltMinOptions& opts) {
  const auto n = static_cast<std::size_t>(A.rows());
  if (y.size() != A.rows()) throw std::invalid_argument("alternating_min: size mismatch");
  if (opts.restarts < 1 || opts.max_iters < 1)
    throw std::invalid_argument("alternating_min: restarts and max_iters must be >= 1");
  detail::require_full_rank(A);

  EstimationResult best;
  best.objective = std::numeric_limits<double>::infinity();
  std::vector<double> best_trace;

  for (int r = 0; r < opts.restarts; ++r) {
    Permutation pi = (r == 0) ? Permutation::identity(n) : sample_uniform(n, rng);
    std::vector<double> trace;
    std::size_t iters = 0;
    double objective = std::numeric_limits<double>::infinity();
    Eigen::VectorXd x;
    for (int it = 0; it < opts.max_iters; ++it) {
      ++iters;
      x = least_squares_fit(y, A, pi);
      objective = (y - pi.apply(A * x)).squaredNorm();
      trace.push_back(objective);
      Permutation next = detail::rank_match(y, A * x);
      if (next == pi) break;
      pi = std::move(next);
    }
    if (objective < best.objective) {
      best.pi_hat = pi;
      best.x_hat = x;
      best.objective = objective;
      best.iterations = iters;
      best_trace = std::move(trace);
    }
  }

  // Report the profile objective at the final permutation; identical to the
  // last fitted value up to the least-squares solve already performed.
  best.objective = projection_residual(y, A, best.pi_hat);
  best.exact = false;
  if (opts.objective_trace) *opts.objective_trace = std::move(best_trace);
  return best;
}

}  // namespace permreg
