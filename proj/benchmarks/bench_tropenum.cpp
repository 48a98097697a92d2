#include <benchmark/benchmark.h>

#include "tropenum/enumeration.hpp"
#include "tropenum/lattice_geometry.hpp"
#include "tropenum/recursions.hpp"

using namespace tropenum;

static void CountRationalCurves(benchmark::State& state) {
  CountRequest req{LatticePolygon::triangle(state.range(0))};
  req.irreducible_only = true;
  for (auto _ : state) {
    auto report = count_curves(req);
    benchmark::DoNotOptimize(report.total);
  }
}
BENCHMARK(CountRationalCurves)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void CountPlaneCubics(benchmark::State& state) {
  CountRequest req{LatticePolygon::triangle(3)};
  req.genus = 1;
  for (auto _ : state) {
    auto report = count_curves(req);
    benchmark::DoNotOptimize(report.total);
  }
}
BENCHMARK(CountPlaneCubics)->Unit(benchmark::kSecond)->Iterations(1);

static void GenerateTypes(benchmark::State& state) {
  const TropicalDegree deg = dual_degree(LatticePolygon::triangle(state.range(0)));
  for (auto _ : state) {
    std::size_t n = generate_types(deg, 0, 0, true, [](const CombinatorialType&) {});
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(GenerateTypes)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void SeveriTable(benchmark::State& state) {
  for (auto _ : state) {
    auto table = severi_table(state.range(0), TableFormat::Tsv);
    benchmark::DoNotOptimize(table);
  }
}
BENCHMARK(SeveriTable)->Arg(6)->Arg(9);

static void InteriorPoints(benchmark::State& state) {
  const LatticePolygon p({{0, 0}, {1, 0}, {-16, 105}});
  for (auto _ : state) benchmark::DoNotOptimize(interior_points(p).count);
}
BENCHMARK(InteriorPoints);

BENCHMARK_MAIN();
