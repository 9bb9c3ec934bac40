#include <benchmark/benchmark.h>

#include "edgecluster/approx.hpp"
#include "edgecluster/kmeans.hpp"
#include "edgecluster/rng.hpp"

namespace {

using namespace edgecluster;

// Mildly overlapping blobs; enough boundary points that approx_lloyd has a
// non-trivial active set.
PointSet make_blobs(std::size_t n, std::size_t d, std::size_t k, std::uint64_t seed) {
  Xoshiro256ss rng(seed);
  PointSet points(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    const double center = static_cast<double>(i % k) * 3.0;
    auto row = points.row(i);
    for (std::size_t c = 0; c < d; ++c) row[c] = center + rng.uniform(-2.0, 2.0);
  }
  return points;
}

void BM_LloydExact(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::size_t k = 8;
  const PointSet points = make_blobs(n, 16, k, 1);
  const CentroidSet seeds = seed_random(points, k, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lloyd(points, seeds, StopRule::fixed(10)));
  }
}
BENCHMARK(BM_LloydExact)->Arg(1000)->Arg(10000);

void BM_LloydApprox(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::size_t k = 8;
  const PointSet points = make_blobs(n, 16, k, 1);
  const CentroidSet seeds = seed_random(points, k, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(approx_lloyd(points, seeds, StopRule::fixed(10)));
  }
}
BENCHMARK(BM_LloydApprox)->Arg(1000)->Arg(10000);

void BM_AssignStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const PointSet points = make_blobs(n, 128, 8, 1);
  const CentroidSet seeds = seed_random(points, 64, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(assign_step(points, seeds));
  }
}
BENCHMARK(BM_AssignStep)->Arg(1000)->Arg(4000);

}  // namespace
