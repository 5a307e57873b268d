// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include "kth/geom/forms.hpp"
#include "kth/lattice/circle.hpp"
#include "kth/oracle/spectral.hpp"

using namespace kth;

namespace {

// 5^6 * 13 / 2: large enough that the l-loop dominates
const Rational kCircleRadius(203125, 2);

void BM_LatticeSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(lattice_points_on_circle_serial(kCircleRadius).count());
}
void BM_LatticeParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(lattice_points_on_circle(kCircleRadius).count());
}

struct ResidualCase {
  HarmonicForm form;
  ResidualParams params;
  std::vector<Point4> grid = half_offset_grid(5);

  ResidualCase() {
    const AcsParams p(0, Rational(5, 2));
    const auto basis = zero_sector_solutions(p, MetricSpec::standard());
    for (const auto& f : basis) form.components.insert(form.components.end(), f.components.begin(), f.components.end());
    params = residual_params(p, MetricSpec::standard());
  }
};

void BM_ResidualSerial(benchmark::State& state) {
  const ResidualCase c;
  for (auto _ : state) benchmark::DoNotOptimize(pde_residual_serial(c.form, c.params, c.grid).residual);
}
void BM_ResidualParallel(benchmark::State& state) {
  const ResidualCase c;
  for (auto _ : state) benchmark::DoNotOptimize(pde_residual(c.form, c.params, c.grid).residual);
}

void BM_OracleSerial(benchmark::State& state) {
  const AcsParams p(0, Rational(5, 3));
  for (auto _ : state) benchmark::DoNotOptimize(oracle_h01_serial(p, MetricSpec::standard()).count);
}
void BM_OracleParallel(benchmark::State& state) {
  const AcsParams p(0, Rational(5, 3));
  for (auto _ : state) benchmark::DoNotOptimize(oracle_h01(p, MetricSpec::standard()).count);
}

}  // namespace

BENCHMARK(BM_LatticeSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LatticeParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ResidualSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ResidualParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_OracleSerial)->Unit(benchmark::kSecond)->Iterations(1);
BENCHMARK(BM_OracleParallel)->Unit(benchmark::kSecond)->Iterations(1)->UseRealTime();

BENCHMARK_MAIN();
