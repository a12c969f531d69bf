#include <benchmark/benchmark.h>

#include "symspace/experiments.hpp"
#include "symspace/gpd.hpp"
#include "symspace/matfun.hpp"
#include "symspace/rng.hpp"
#include "symspace/series.hpp"

using namespace symspace;

namespace {

Mat fixture_mat(int n, double scale) {
  Rng rng(1234);
  Mat a = random_mat(rng, n, n);
  return a * (scale / fro_norm(a));
}

void BM_expm_8x8(benchmark::State& state) {
  Mat a = fixture_mat(8, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(expm(a));
}
BENCHMARK(BM_expm_8x8);

void BM_logm_8x8(benchmark::State& state) {
  Mat x = expm(fixture_mat(8, 0.8));
  for (auto _ : state) benchmark::DoNotOptimize(logm(x));
}
BENCHMARK(BM_logm_8x8);

void BM_svd_polar_8x8(benchmark::State& state) {
  Rng rng(77);
  Mat a = random_with_condition(rng, 8, 100.0);
  for (auto _ : state) benchmark::DoNotOptimize(svd_polar(a));
}
BENCHMARK(BM_svd_polar_8x8);

void BM_classical_polar_5x5(benchmark::State& state) {
  Rng rng(78);
  Mat a = random_with_condition(rng, 5, 1000.0);
  for (auto _ : state) benchmark::DoNotOptimize(classical_polar(a));
}
BENCHMARK(BM_classical_polar_5x5);

void BM_gpd_series_order4(benchmark::State& state) {
  Involution inv = Involution::transpose_inverse();
  Splitting sp = split(fixture_mat(6, 0.3), inv);
  for (auto _ : state) benchmark::DoNotOptimize(gpd_series(sp.p, sp.k, 4));
}
BENCHMARK(BM_gpd_series_order4);

void BM_generalized_polar(benchmark::State& state) {
  Mat x = expm(fixture_mat(6, 0.2));
  Involution inv = Involution::transpose_inverse();
  for (auto _ : state) benchmark::DoNotOptimize(generalized_polar(x, inv, 4));
}
BENCHMARK(BM_generalized_polar);

void BM_thue_morse_level3_macro(benchmark::State& state) {
  Grid g{32, 5.0};
  Flow tm = thue_morse(advection_pair_fe(g, 2e-3), transpose_map(g.n), 3);
  State u = gaussian_field(g, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(tm.step(1e-2, u));
}
BENCHMARK(BM_thue_morse_level3_macro);

void BM_stiff_base_step(benchmark::State& state) {
  Grid g{20, 1.0};
  Flow base = stiff_base_flow(g);
  State u = gaussian_field(g, 9.0);
  for (auto _ : state) benchmark::DoNotOptimize(base.step(0.01, u));
}
BENCHMARK(BM_stiff_base_step);

}  // namespace

BENCHMARK_MAIN();
