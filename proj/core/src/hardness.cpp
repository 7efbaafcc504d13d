#include "permreg/hardness.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "permreg/errors.hpp"

namespace permreg {

namespace {

constexpr double kFeasibilityTolerance = 1e-9;

void validate(const PartitionInstance& inst) {
  if (inst.b.empty()) throw std::invalid_argument("PartitionInstance: requires d >= 1");
  for (auto v : inst.b)
    if (v < 1) throw std::invalid_argument("PartitionInstance: entries must be >= 1");
}

}  // namespace

ReductionOutput reduce_partition(const PartitionInstance& inst) {
  validate(inst);
  const auto d = static_cast<Eigen::Index>(inst.b.size());
  ReductionOutput out;
  out.y.setZero(2 * d + 1);
  for (Eigen::Index i = 0; i < d; ++i) out.y(i) = inst.b[static_cast<std::size_t>(i)];
  out.A.setZero(2 * d + 1, 2 * d);
  for (Eigen::Index i = 0; i < 2 * d; ++i) out.A(i, i) = 1;
  for (Eigen::Index j = 0; j < d; ++j) {
    out.A(2 * d, j) = 1;
    out.A(2 * d, d + j) = -1;
  }
  return out;
}

FeasibilityResult feasibility_check(const ReductionOutput& out, int max_d) {
  const auto n = static_cast<std::size_t>(out.y.size());
  const auto d = static_cast<std::size_t>(out.A.cols()) / 2;
  if (out.A.rows() != out.y.size() || out.A.cols() % 2 != 0 || n != 2 * d + 1)
    throw std::invalid_argument("feasibility_check: malformed reduction output");
  if (d > static_cast<std::size_t>(max_d))
    throw EnumerationLimitError("feasibility_check: d exceeds the enumeration cap");

  const Eigen::MatrixXd A = out.A.cast<double>();
  const Eigen::VectorXd y = out.y.cast<double>();

  std::vector<std::size_t> map(n);
  std::iota(map.begin(), map.end(), std::size_t{0});

  FeasibilityResult result;
  do {
    Eigen::VectorXd y_pi(n);
    for (std::size_t i = 0; i < n; ++i)
      y_pi(static_cast<Eigen::Index>(i)) = y(static_cast<Eigen::Index>(map[i]));

    Eigen::VectorXd x = A.householderQr().solve(y_pi);
    const double residual = (y_pi - A * x).squaredNorm();
    const bool solvable = residual < kFeasibilityTolerance;

    // Eliminated form of y_pi = A x: the first d permuted entries must sum to
    // the same value as the remaining d+1.
    std::int64_t head = 0;
    std::int64_t tail = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::int64_t v = out.y(static_cast<Eigen::Index>(map[i]));
      if (i < d)
        head += v;
      else
        tail += v;
    }
    if (solvable != (head == tail))
      throw std::logic_error("feasibility_check: least-squares and eliminated-form criteria disagree");

    if (solvable && !result.feasible) {
      result.feasible = true;
      result.witness = FeasibilityWitness{Permutation(map), x};
    }
  } while (std::next_permutation(map.begin(), map.end()));

  return result;
}

PartitionDecision partition_brute_force(const PartitionInstance& inst) {
  validate(inst);
  const std::size_t d = inst.b.size();
  if (d > 20) throw EnumerationLimitError("partition_brute_force: d exceeds 20");

  const std::int64_t total = std::accumulate(inst.b.begin(), inst.b.end(), std::int64_t{0});
  PartitionDecision decision;
  if (total % 2 != 0) return decision;

  const std::int64_t target = total / 2;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < d; ++i)
      if (mask & (std::uint64_t{1} << i)) sum += inst.b[i];
    if (sum == target) {
      std::vector<std::size_t> subset;
      for (std::size_t i = 0; i < d; ++i)
        if (mask & (std::uint64_t{1} << i)) subset.push_back(i);
      decision.exists = true;
      decision.subset = std::move(subset);
      return decision;
    }
  }
  return decision;
}

}  // namespace permreg
