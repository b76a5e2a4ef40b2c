// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "sfmoea/experiment.hpp"
#include "sfmoea/generate.hpp"
#include "sfmoea/indicators.hpp"

using namespace sfmoea;

namespace {

std::vector<ObjectivePoint> random_front(std::size_t n, std::size_t dims, Rng& rng) {
  std::vector<ObjectivePoint> pts(n, ObjectivePoint(dims));
  for (auto& p : pts) {
    const auto w = draw_random_weight(dims, rng);
    for (std::size_t j = 0; j < dims; ++j) p[j] = 1000.0 * (1.0 - w[j]) + uniform01(rng);
  }
  return pts;
}

void BM_RMeasure(benchmark::State& state, bool parallel) {
  const auto dims = static_cast<std::size_t>(state.range(1));
  Rng rng(7);
  const auto pts = random_front(static_cast<std::size_t>(state.range(0)), dims, rng);
  const auto weights = generate_uniform_weights(dims, r_weight_granularity(dims));
  const ObjectivePoint ref(dims, 0.0);
  for (auto _ : state) {
    const double r = parallel ? r_measure(pts, weights, ref) : r_measure_serial(pts, weights, ref);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(pts.size() * weights.size()));
}

LoadedInstance small_tsp() {
  Rng rng(11);
  LoadedInstance inst;
  inst.kind = ProblemKind::mstsp;
  inst.name = "bench";
  std::vector<std::vector<int>> m;
  for (int j = 0; j < 2; ++j) m.push_back(euclidean_cost_matrix(generate_euclidean(50, 1000, rng)));
  inst.data = TspInstance(50, std::move(m));
  return inst;
}

std::vector<MethodConfig> small_jobs() {
  std::vector<MethodConfig> jobs;
  for (Method method : kAllMethods)
    for (std::uint64_t seed = 1; seed <= 2; ++seed) {
      MethodConfig c;
      c.method = method;
      c.weight_granularity = 20;
      c.generations = 2;
      c.seed = seed;
      jobs.push_back(c);
    }
  return jobs;
}

void BM_ExperimentJobs(benchmark::State& state, bool parallel) {
  const auto inst = small_tsp();
  const auto jobs = small_jobs();
  for (auto _ : state) {
    auto out = parallel ? execute_runs_parallel(inst, jobs, true, 0)
                        : execute_runs_serial(inst, jobs, true);
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_RMeasure, serial, false)->Args({200, 2})->Args({500, 3});
BENCHMARK_CAPTURE(BM_RMeasure, parallel, true)->Args({200, 2})->Args({500, 3});
BENCHMARK_CAPTURE(BM_ExperimentJobs, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ExperimentJobs, parallel, true)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
