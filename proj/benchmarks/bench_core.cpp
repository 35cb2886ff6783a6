// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "anderson/enhanced2d.hpp"
#include "anderson/noise.hpp"
#include "anderson/pam.hpp"
#include "anderson/spectral.hpp"
#include "anderson/weyl.hpp"

using namespace anderson;

static void BM_PeriodicConvolve2D(benchmark::State& state) {
  const auto lat = make_lattice(2, 8.0, static_cast<int>(state.range(0)));
  const auto xi = sample_white_noise(lat, 1, 0).field;
  const auto m = make_mollifier(lat, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(periodic_convolve(xi, m.profile));
  state.SetComplexityN(static_cast<benchmark::IterationCount>(lat.sites()));
}
BENCHMARK(BM_PeriodicConvolve2D)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

static void BM_PeriodicConvolve3D(benchmark::State& state) {
  const auto lat = make_lattice(3, 4.0, static_cast<int>(state.range(0)));
  const auto xi = sample_white_noise(lat, 1, 0).field;
  const auto m = make_mollifier(lat, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(periodic_convolve(xi, m.profile));
}
BENCHMARK(BM_PeriodicConvolve3D)->Arg(32)->Arg(64)->Arg(128);

static void BM_SemigroupStep(benchmark::State& state) {
  const auto lat = make_lattice(2, 8.0, static_cast<int>(state.range(0)));
  const auto kernel = build_green_kernel(lat);
  const auto m = make_mollifier(lat, 0.5);
  const auto q = build_enhanced_2d(sample_white_noise(lat, 1, 0), m, kernel, compute_renorm_2d(m, kernel));
  SemigroupOptions opt;
  opt.dt = 1e-4;
  opt.scheme = state.range(1) == 0 ? Scheme::ExpEuler : Scheme::Strang;
  const Field f(lat, 1.0);
  SemigroupRun run(q, kernel, f, opt);
  for (auto _ : state) run.advance(1);
}
BENCHMARK(BM_SemigroupStep)->ArgsProduct({{64, 256}, {0, 1}});

static void BM_DenseEigensolve(benchmark::State& state) {
  const auto lat = make_lattice(2, 0.5 * static_cast<double>(state.range(0)), static_cast<int>(state.range(0)));
  auto W = sample_white_noise(lat, 1, 0).field;
  const auto H = assemble_hamiltonian(W, LaplacianKind::FiniteDifference);
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(H));
}
BENCHMARK(BM_DenseEigensolve)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_BallMaxFilter(benchmark::State& state) {
  const auto lat = make_lattice(2, 64.0, 512);
  const auto g = sample_white_noise(lat, 1, 0).field;
  const double n = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ball_max_filter(g, n));
}
BENCHMARK(BM_BallMaxFilter)->Arg(1)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
