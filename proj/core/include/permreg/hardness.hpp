#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <vector>

#include "permreg/permutation.hpp"

namespace permreg {

/// A PARTITION instance: d positive integers to split into two equal-sum
/// subsets.
struct PartitionInstance {
  std::vector<std::int64_t> b;
};

/// The (y, A) pair built from a PARTITION instance: y carries the integers
/// followed by d+1 zeros; A stacks the (2d x 2d) identity over the row
/// (1,...,1,-1,...,-1).
struct ReductionOutput {
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> y;               // 2d+1
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> A;  // (2d+1) x 2d
};

/// Polynomial-time construction of (y, A). Entries must be >= 1.
ReductionOutput reduce_partition(const PartitionInstance& inst);

/// Witness for a feasible system y_pi = A x.
struct FeasibilityWitness {
  Permutation pi = Permutation::identity(1);
  Eigen::VectorXd x;
};

struct FeasibilityResult {
  bool feasible = false;
  std::optional<FeasibilityWitness> witness;
};

/// Decides whether some permutation pi and vector x solve y_pi = A x, by
/// enumerating all (2d+1)! permutations and solving the least-squares system
/// for each (residual < 1e-9 counts as exact). Each permutation is
/// cross-checked against the eliminated form of the system -- the sum of the
/// first d entries of the permuted y equals the sum of the rest -- and any
/// disagreement throws std::logic_error.
/// Throws EnumerationLimitError when d > max_d.
FeasibilityResult feasibility_check(const ReductionOutput& out, int max_d = 3);

/// Exhaustive subset search for an equal-sum split. Requires d <= 20.
struct PartitionDecision {
  bool exists = false;
  std::optional<std::vector<std::size_t>> subset;
};
PartitionDecision partition_brute_force(const PartitionInstance& inst);

}  // namespace permreg
