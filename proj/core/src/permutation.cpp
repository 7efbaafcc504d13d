#include "permreg/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace permreg {

Permutation::Permutation(std::vector<std::size_t> map) : map_(std::move(map)) {
  const std::size_t n = map_.size();
  if (n == 0) throw std::invalid_argument("Permutation: empty map");
  std::vector<bool> seen(n, false);
  for (std::size_t v : map_) {
    if (v >= n || seen[v]) throw std::invalid_argument("Permutation: map is not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> m(n);
  std::iota(m.begin(), m.end(), std::size_t{0});
  return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = i;
  return Permutation(std::move(inv));
}

Eigen::VectorXd Permutation::apply(const Eigen::Ref<const Eigen::VectorXd>& v) const {
  if (static_cast<std::size_t>(v.size()) != map_.size())
    throw std::invalid_argument("Permutation::apply: size mismatch");
  Eigen::VectorXd out(v.size());
  for (std::size_t i = 0; i < map_.size(); ++i)
    out[static_cast<Eigen::Index>(i)] = v[static_cast<Eigen::Index>(map_[i])];
  return out;
}

Eigen::MatrixXd Permutation::apply_rows(const Eigen::Ref<const Eigen::MatrixXd>& m) const {
  if (static_cast<std::size_t>(m.rows()) != map_.size())
    throw std::invalid_argument("Permutation::apply_rows: size mismatch");
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < map_.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = m.row(static_cast<Eigen::Index>(map_[i]));
  return out;
}

Eigen::MatrixXd Permutation::matrix() const {
  const auto n = static_cast<Eigen::Index>(map_.size());
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    P(i, static_cast<Eigen::Index>(map_[static_cast<std::size_t>(i)])) = 1.0;
  return P;
}

std::size_t hamming_distance(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) throw std::invalid_argument("hamming_distance: size mismatch");
  std::size_t count = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p(i) != q(i)) ++count;
  return count;
}

CyclePartition cycle_decomposition(const Permutation& p) {
  const std::size_t n = p.size();
  CyclePartition out;
  std::vector<bool> visited(n, false);
  for (std::size_t start = 0; start < n; ++start) {
    if (visited[start]) continue;
    if (p(start) == start) {
      visited[start] = true;
      out.fixed_points.push_back(start);
      continue;
    }
    std::vector<std::size_t> cycle;
    std::size_t v = start;
    while (!visited[v]) {
      visited[v] = true;
      cycle.push_back(v);
      v = p(v);
    }
    out.cycles.push_back(std::move(cycle));
  }
  return out;
}

namespace {

// Round-robin assignment of one cycle's vertices to three buckets. The last
// vertex closes the cycle back to the first, so when the cycle length is
// 1 mod 3 it is diverted to the middle bucket to stay independent.
std::array<std::vector<std::size_t>, 3> split_cycle(const std::vector<std::size_t>& cycle) {
  std::array<std::vector<std::size_t>, 3> buckets;
  const std::size_t len = cycle.size();
  for (std::size_t j = 0; j < len; ++j) {
    std::size_t b = j % 3;
    if (j == len - 1 && len % 3 == 1) b = 1;
    buckets[b].push_back(cycle[j]);
  }
  return buckets;
}

}  // namespace

CyclePartition independent_partition(const Permutation& p) {
  const std::size_t k = p.size();
  for (std::size_t i = 0; i < k; ++i)
    if (p(i) == i) throw std::invalid_argument("independent_partition: input has a fixed point");
  if (k < 3) throw std::domain_error("independent_partition: requires support size k >= 3");

  CyclePartition out = cycle_decomposition(p);

  // Merge each cycle's buckets into the globally smallest parts (largest
  // bucket into smallest part). Keeps all three part sizes within 1 of each
  // other, hence each >= floor(k/3).
  for (const auto& cycle : out.cycles) {
    auto buckets = split_cycle(cycle);
    std::array<std::size_t, 3> part_order{0, 1, 2};
    std::sort(part_order.begin(), part_order.end(),
              [&](std::size_t a, std::size_t b) { return out.parts[a].size() < out.parts[b].size(); });
    std::array<std::size_t, 3> bucket_order{0, 1, 2};
    std::sort(bucket_order.begin(), bucket_order.end(),
              [&](std::size_t a, std::size_t b) { return buckets[a].size() > buckets[b].size(); });
    for (std::size_t r = 0; r < 3; ++r) {
      auto& dst = out.parts[part_order[r]];
      auto& src = buckets[bucket_order[r]];
      dst.insert(dst.end(), src.begin(), src.end());
    }
  }
  return out;
}

Permutation sample_uniform(std::size_t n, RngEngine& rng) {
  if (n == 0) throw std::invalid_argument("sample_uniform: n must be >= 1");
  std::vector<std::size_t> m(n);
  std::iota(m.begin(), m.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(m[i - 1], m[pick(rng)]);
  }
  return Permutation(std::move(m));
}

Permutation sample_hamming_ball_generative(std::size_t n, std::size_t hbar, RngEngine& rng) {
  if (hbar < 2 || hbar > n)
    throw std::invalid_argument("sample_hamming_ball_generative: requires 2 <= hbar <= n");

  // Step 1: hbar positions uniformly without replacement (partial Fisher-Yates).
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < hbar; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }

  // Step 2: permute the chosen positions uniformly.
  std::vector<std::size_t> images(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(hbar));
  for (std::size_t i = hbar; i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(images[i - 1], images[pick(rng)]);
  }

  std::vector<std::size_t> m(n);
  std::iota(m.begin(), m.end(), std::size_t{0});
  for (std::size_t i = 0; i < hbar; ++i) m[pool[i]] = images[i];
  return Permutation(std::move(m));
}

HammingBallCardinality hamming_ball_cardinality(std::size_t n, std::size_t hbar) {
  if (n == 0 || n > 20) throw std::invalid_argument("hamming_ball_cardinality: requires 1 <= n <= 20");
  if (hbar > n) throw std::invalid_argument("hamming_ball_cardinality: requires hbar <= n");

  // Derangement numbers D_k = (k-1)(D_{k-1} + D_{k-2}).
  std::vector<std::uint64_t> derangements(hbar + 1);
  for (std::size_t k = 0; k <= hbar; ++k) {
    if (k == 0)
      derangements[k] = 1;
    else if (k == 1)
      derangements[k] = 0;
    else
      derangements[k] = (k - 1) * (derangements[k - 1] + derangements[k - 2]);
  }

  auto binomial = [](std::size_t nn, std::size_t kk) {
    std::uint64_t r = 1;
    for (std::size_t j = 1; j <= kk; ++j) r = r * (nn - kk + j) / j;
    return r;
  };

  std::uint64_t exact = 0;
  for (std::size_t k = 0; k <= hbar; ++k) exact += binomial(n, k) * derangements[k];

  std::uint64_t factorial = 1;
  for (std::size_t j = 2; j <= hbar; ++j) factorial *= j;

  return HammingBallCardinality{exact, binomial(n, hbar) * factorial};
}

}  // namespace permreg
