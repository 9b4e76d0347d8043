// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <numbers>

#include "opcalc/dilation.hpp"
#include "opcalc/funcalc.hpp"
#include "opcalc/random.hpp"
#include "opcalc/semigroup.hpp"

namespace {

using namespace opcalc;

ComplexMatrix random_stable(int dim, std::uint64_t seed) {
  SplitMix64 rng(seed);
  ComplexMatrix a(dim, dim);
  const double scale = 0.3 / std::sqrt(static_cast<double>(dim));
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) a(i, j) = scale * rng.complex_gaussian();
  }
  a += 1.5 * ComplexMatrix::Identity(dim, dim);
  return a;
}

void BM_fc_sector(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const ComplexMatrix a = random_stable(dim, 7);
  const HoloFunction f = product(resolvent_function(Complex(-6, 0)),
                                 resolvent_function(Complex(-8, 1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fc_sector(f, a, 0.9, 1e-8));
  }
}
BENCHMARK(BM_fc_sector)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_fc_kregion(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const ComplexMatrix a = random_stable(dim, 7);
  const HoloFunction f = product(resolvent_function(Complex(-6, 0)),
                                 resolvent_function(Complex(-8, 1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fc_kregion(f, a, 2.0, -0.5, 0.2, 1e-8));
  }
}
BENCHMARK(BM_fc_kregion)->Arg(2)->Arg(8);

void BM_matrix_exp(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const ComplexMatrix a = random_stable(dim, 3);
  double t = 0.0;
  for (auto _ : state) {
    t += 0.01;
    benchmark::DoNotOptimize(matrix_exp(a, -t));
  }
}
BENCHMARK(BM_matrix_exp)->Arg(4)->Arg(16)->Arg(64);

void BM_smallest_singular_value(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const ComplexMatrix a = random_stable(dim, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(smallest_singular_value(a));
  }
}
BENCHMARK(BM_smallest_singular_value)->Arg(4)->Arg(16)->Arg(64);

void BM_quotient_norm(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const double p = state.range(1) / 10.0;
  SplitMix64 rng(11);
  DilationModel m;
  ComplexMatrix t(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) t(i, j) = rng.complex_gaussian();
  }
  if (smallest_singular_value(t) < 0.3) t += ComplexMatrix::Identity(dim, dim);
  m.t_op = t;
  m.c = smallest_singular_value(t) * 0.8;
  m.p = p;
  m.alpha = std::pow(2.0, 1.0 - 1.0 / p) * 1.3;
  ComplexVector x(dim);
  for (int i = 0; i < dim; ++i) x(i) = rng.complex_gaussian();
  for (auto _ : state) {
    benchmark::DoNotOptimize(iota_norm(m, x));
  }
}
BENCHMARK(BM_quotient_norm)->Args({1, 20})->Args({4, 20})->Args({4, 25})->Args({6, 30});

void BM_sup_norm_estimate(benchmark::State& state) {
  const HoloFunction f = product(resolvent_function(Complex(-3, 0)),
                                 resolvent_function(Complex(-5, 2)));
  const Region region(KRegion{3.0 * std::numbers::pi / 4.0, 1.0, -1.5});
  const GridSpec grid{.radius = 1e2, .points_per_direction =
                          static_cast<int>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(sup_norm_estimate(f, region, grid));
  }
}
BENCHMARK(BM_sup_norm_estimate)->Arg(128)->Arg(512);

void BM_young_conjugate(benchmark::State& state) {
  const PhiSpec& spec = phi_by_name("xlog");
  double s = 1.0;
  for (auto _ : state) {
    s = (s > 20.0) ? 1.0 : s + 0.1;
    benchmark::DoNotOptimize(young_conjugate(spec, s, 1e10));
  }
}
BENCHMARK(BM_young_conjugate);

}  // namespace

BENCHMARK_MAIN();
