// Per-iteration cost of DAA. One iteration solves every client subproblem
// (sum_j |N_j| products), accumulates per-AP loads, evaluates g, and projects
// onto the simplex (sort of N prices). The reported complexity is fitted
// against sum_j |N_j|.

#include <benchmark/benchmark.h>

#include <vector>

#include "assoc60/dual_solver.hpp"
#include "assoc60/instance.hpp"
#include "assoc60/rng.hpp"

namespace {

using namespace assoc60;

// n APs, m clients, each client sees `degree` consecutive APs.
Instance banded_instance(std::size_t n, std::size_t m, std::size_t degree) {
  auto rng = make_stream(2024, n * 1000003 + m, StreamPurpose::kInstance);
  PairTable betas(m);
  for (ClientIndex j = 0; j < m; ++j) {
    const std::size_t first = uniform_index(rng, n);
    for (std::size_t d = 0; d < degree && d < n; ++d) {
      betas.set((first + d) % n, j, 0.01 + 0.2 * uniform01(rng));
    }
  }
  return Instance::from_betas(n, std::vector<double>(m, 1.0), betas);
}

constexpr std::size_t kIters = 50;

void BM_DaaIterationVsClients(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto inst = banded_instance(8, m, 2);
  for (auto _ : state) {
    auto r = run_daa(inst, {.max_iters = kIters});
    benchmark::DoNotOptimize(r.dual_value);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * kIters));
  state.SetComplexityN(static_cast<std::int64_t>(inst.num_pairs()));
  state.counters["pairs"] = static_cast<double>(inst.num_pairs());
}
BENCHMARK(BM_DaaIterationVsClients)->RangeMultiplier(4)->Range(64, 65536)->Complexity();

void BM_DaaIterationVsAps(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto inst = banded_instance(n, 2000, 3);
  for (auto _ : state) {
    auto r = run_daa(inst, {.max_iters = kIters});
    benchmark::DoNotOptimize(r.dual_value);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * kIters));
  state.SetComplexityN(static_cast<std::int64_t>(n));
}
BENCHMARK(BM_DaaIterationVsAps)->RangeMultiplier(2)->Range(4, 256)->Complexity();

void BM_ProjectSimplex(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto rng = make_stream(7, n, StreamPurpose::kInstance);
  std::vector<double> v(n);
  for (double& x : v) x = 2.0 * uniform01(rng) - 0.5;
  for (auto _ : state) {
    auto p = project_simplex(v);
    benchmark::DoNotOptimize(p.data());
  }
  state.SetComplexityN(static_cast<std::int64_t>(n));
}
BENCHMARK(BM_ProjectSimplex)->RangeMultiplier(4)->Range(4, 16384)->Complexity(benchmark::oNLogN);

}  // namespace

BENCHMARK_MAIN();
