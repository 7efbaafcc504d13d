#include <benchmark/benchmark.h>

#include "permreg/estimators.hpp"
#include "permreg/instance.hpp"
#include "permreg/residual.hpp"

namespace {

permreg::ProblemInstance make_d1_instance(int n, std::uint64_t seed) {
  Eigen::VectorXd x(1);
  x(0) = 100.0;
  return permreg::generate_instance(n, 1, x, 1.0, permreg::TruthSpec::random(), seed);
}

void BM_SortMle(benchmark::State& state) {
  const auto inst = make_d1_instance(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    auto res = permreg::sort_mle_d1(inst.y, inst.A.col(0));
    benchmark::DoNotOptimize(res.objective);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SortMle)->RangeMultiplier(8)->Range(64, 32768)->Complexity(benchmark::oNLogN);

void BM_ProjectionResidual(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int d = static_cast<int>(state.range(1));
  Eigen::VectorXd x = Eigen::VectorXd::Ones(d);
  const auto inst = permreg::generate_instance(n, d, x, 1.0, permreg::TruthSpec::random(), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(permreg::projection_residual(inst.y, inst.A, inst.pi_star));
  }
}
BENCHMARK(BM_ProjectionResidual)->Args({100, 1})->Args({100, 5})->Args({1000, 10});

void BM_BruteForce(benchmark::State& state) {
  const auto inst = make_d1_instance(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) {
    auto res = permreg::brute_force_mle(inst.y, inst.A);
    benchmark::DoNotOptimize(res.objective);
  }
}
BENCHMARK(BM_BruteForce)->DenseRange(5, 8);

void BM_AlternatingMin(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Eigen::VectorXd x = Eigen::VectorXd::Ones(3) * 10.0;
  const auto inst = permreg::generate_instance(n, 3, x, 1.0, permreg::TruthSpec::random(), 4);
  for (auto _ : state) {
    auto rng = permreg::make_engine(5);
    auto res = permreg::alternating_min(inst.y, inst.A, rng);
    benchmark::DoNotOptimize(res.objective);
  }
}
BENCHMARK(BM_AlternatingMin)->Arg(50)->Arg(200);

void BM_GenerateInstance(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Eigen::VectorXd x(1);
  x(0) = 10.0;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto inst = permreg::generate_instance(n, 1, x, 1.0, permreg::TruthSpec::random(), ++seed);
    benchmark::DoNotOptimize(inst.y.sum());
  }
}
BENCHMARK(BM_GenerateInstance)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
