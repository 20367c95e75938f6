#include <benchmark/benchmark.h>

#include "deptol/depth.hpp"
#include "deptol/geometry.hpp"
#include "deptol/rng.hpp"

using namespace deptol;

namespace {

Dataset normal_sample(std::size_t n) {
  return sample_dist(Distribution::std_bivariate_normal(), n, {42, 7});
}

}  // namespace

static void BM_SimplicialNaive(benchmark::State& state) {
  const Dataset data = normal_sample(static_cast<std::size_t>(state.range(0)));
  const Vec query{0.25, -0.1};
  for (auto _ : state) {
    auto d = simplicial_depth_naive(query, data);
    benchmark::DoNotOptimize(d);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SimplicialNaive)->RangeMultiplier(2)->Range(32, 512)->Complexity();

static void BM_SimplicialFast2D(benchmark::State& state) {
  const Dataset data = normal_sample(static_cast<std::size_t>(state.range(0)));
  const Vec query{0.25, -0.1};
  for (auto _ : state) {
    auto d = simplicial_depth_fast2d(query, data);
    benchmark::DoNotOptimize(d);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SimplicialFast2D)->RangeMultiplier(2)->Range(32, 4096)->Complexity();

static void BM_MahalanobisBatch(benchmark::State& state) {
  const Dataset data = normal_sample(static_cast<std::size_t>(state.range(0)));
  const DepthEvaluator eval(data, DepthKind::kMahalanobis);
  const Vec query{0.25, -0.1};
  for (auto _ : state) {
    double d = eval(query);
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(BM_MahalanobisBatch)->Arg(1000);

static void BM_ConvexHull(benchmark::State& state) {
  const Dataset data = normal_sample(static_cast<std::size_t>(state.range(0)));
  std::vector<Point2> pts;
  pts.reserve(data.size());
  for (const auto& v : data) pts.push_back({v[0], v[1]});
  for (auto _ : state) {
    auto hull = convex_hull_2d(pts);
    benchmark::DoNotOptimize(hull);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ConvexHull)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

BENCHMARK_MAIN();
