#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <vector>

#include "permreg/rng.hpp"

namespace permreg {

/// A permutation pi of {0..n-1}, stored as map[i] = pi(i).
///
/// Action convention, fixed project-wide: the permuted vector v' satisfies
/// v'[i] = v[map[i]]. The matrix form returned by matrix() reproduces the
/// same action as a matrix product.
class Permutation {
 public:
  /// Validates that `map` is a bijection on {0..n-1}; throws
  /// std::invalid_argument otherwise (including n = 0).
  explicit Permutation(std::vector<std::size_t> map);

  static Permutation identity(std::size_t n);

  std::size_t size() const { return map_.size(); }
  std::size_t operator()(std::size_t i) const { return map_[i]; }
  const std::vector<std::size_t>& map() const { return map_; }

  Permutation inverse() const;

  /// out[i] = v[map[i]]
  Eigen::VectorXd apply(const Eigen::Ref<const Eigen::VectorXd>& v) const;

  /// Row action: out.row(i) = m.row(map[i]).
  Eigen::MatrixXd apply_rows(const Eigen::Ref<const Eigen::MatrixXd>& m) const;

  /// Dense matrix P with P*v == apply(v); exactly one 1 per row and column.
  Eigen::MatrixXd matrix() const;

  bool operator==(const Permutation& other) const = default;

 private:
  std::vector<std::size_t> map_;
};

/// Number of points where the two permutations disagree. Symmetric, never 1.
/// Throws std::invalid_argument on size mismatch.
std::size_t hamming_distance(const Permutation& p, const Permutation& q);

/// Cycle structure of a permutation plus (optionally) a 3-way independent
/// partition of the vertices of the incidence graph G_pi.
struct CyclePartition {
  std::vector<std::vector<std::size_t>> cycles;  // each of length >= 2, in traversal order
  std::vector<std::size_t> fixed_points;
  std::array<std::vector<std::size_t>, 3> parts;  // filled by independent_partition
};

/// Cycles only; parts left empty. Fixed points reported separately.
CyclePartition cycle_decomposition(const Permutation& p);

/// Partitions the support of a derangement into three independent sets of the
/// incidence graph G_pi (edges {i, pi(i)}), each of size >= floor(k/3), with
/// max-min size difference <= 1.
///
/// Requires: p has no fixed points (throws std::invalid_argument) and
/// k = size >= 3 (throws std::domain_error).
CyclePartition independent_partition(const Permutation& p);

/// Uniform over all n! permutations (Fisher-Yates). Deterministic given the
/// engine state. Throws std::invalid_argument for n = 0.
Permutation sample_uniform(std::size_t n, RngEngine& rng);

/// Two-step generative draw: choose hbar positions out of n uniformly at
/// random, then permute the chosen positions uniformly; identity elsewhere.
/// Output satisfies hamming_distance(out, identity) <= hbar.
/// Requires 2 <= hbar <= n.
Permutation sample_hamming_ball_generative(std::size_t n, std::size_t hbar, RngEngine& rng);

/// Number of permutations within Hamming distance hbar of the identity.
struct HammingBallCardinality {
  std::uint64_t exact;            // sum_{k<=hbar} C(n,k) * D_k, D_k = derangement numbers
  std::uint64_t ordered_choices;  // C(n,hbar) * hbar!; counts (position set, arrangement)
                                  // pairs and so over-counts the ball
};

/// Exact integer arithmetic; requires n <= 20 so both counts fit in uint64.
HammingBallCardinality hamming_ball_cardinality(std::size_t n, std::size_t hbar);

}  // namespace permreg
