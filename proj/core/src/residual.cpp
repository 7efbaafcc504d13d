#include "permreg/residual.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

#include "permreg/errors.hpp"

namespace permreg {

namespace detail {

void require_full_rank(const Eigen::MatrixXd& A) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(sv.size() - 1) <= kRankTolerance * sv(0))
    throw DegenerateDesignError("design matrix is numerically rank-deficient");
}

double residual_full_rank(const Eigen::VectorXd& y, const Eigen::MatrixXd& permuted_design) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(permuted_design);
  const Eigen::Index d = permuted_design.cols();
  // Thin Q via application of the Householder reflections to the first d
  // basis vectors; residual = y minus its projection onto span(Q).
  Eigen::MatrixXd thin_q = qr.householderQ() * Eigen::MatrixXd::Identity(y.size(), d);
  return (y - thin_q * (thin_q.transpose() * y)).squaredNorm();
}

}  // namespace detail

double projection_residual(const Eigen::VectorXd& y, const Eigen::MatrixXd& A,
                           const Permutation& p) {
  if (y.size() != A.rows()) throw std::invalid_argument("projection_residual: y/A size mismatch");
  if (static_cast<std::size_t>(A.rows()) != p.size())
    throw std::invalid_argument("projection_residual: permutation size mismatch");
  detail::require_full_rank(A);
  return detail::residual_full_rank(y, p.apply_rows(A));
}

Eigen::VectorXd least_squares_fit(const Eigen::VectorXd& y, const Eigen::MatrixXd& A,
                                  const Permutation& p) {
  detail::require_full_rank(A);
  return p.apply_rows(A).householderQr().solve(y);
}

ResidualStatistics delta_statistic(const ProblemInstance& inst, const Permutation& p) {
  ResidualStatistics stats;
  stats.objective = projection_residual(inst.y, inst.A, p);
  const double truth_objective = projection_residual(inst.y, inst.A, inst.pi_star);
  stats.delta = stats.objective - truth_objective;
  const Eigen::VectorXd signal = inst.pi_star.apply(inst.A * inst.x_star);
  stats.t_pi = detail::residual_full_rank(signal, p.apply_rows(inst.A));

  // The signal lies inside the permuted column space, so the truth residual
  // of y must equal that of w alone. Treat a violation as data corruption
  // (e.g. an instance whose y was edited after generation).
  const double noise_objective = projection_residual(inst.w, inst.A, inst.pi_star);
  const double tolerance =
      1e-8 * noise_objective + 1e-12 * (1.0 + inst.y.squaredNorm());
  if (std::abs(truth_objective - noise_objective) > tolerance)
    throw std::logic_error("delta_statistic: y is inconsistent with (A, x*, pi*, w)");
  return stats;
}

}  // namespace permreg
