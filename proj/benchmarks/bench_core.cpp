#include <benchmark/benchmark.h>

#include <cmath>

#include "slotjet/closed_form.hpp"
#include "slotjet/free_boundary.hpp"
#include "slotjet/functional.hpp"
#include "slotjet/grid.hpp"

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

slotjet::DomainSpec bench_spec() {
  slotjet::DomainSpec s;
  s.a = 1;
  s.b = 0;
  s.theta = kPi / 2;
  s.Q = 1.28;
  s.L = 2;
  s.mu = 2;
  return s;
}

void BM_RelaxSweep(benchmark::State& state) {
  const slotjet::DomainSpec s = bench_spec();
  slotjet::GridField f = slotjet::build(s, 1.0 / state.range(0), 2.0);
  const slotjet::Coefficients c = slotjet::make_coefficients(s, 0.0);
  slotjet::initialize_profile(f, c);
  for (auto _ : state)
    benchmark::DoNotOptimize(slotjet::relax_sweep(f, c, 1.8));
  state.SetItemsProcessed(state.iterations() * f.grid.size());
}
BENCHMARK(BM_RelaxSweep)->Arg(32)->Arg(64);

void BM_Energy(benchmark::State& state) {
  const slotjet::DomainSpec s = bench_spec();
  slotjet::GridField f = slotjet::build(s, 1.0 / state.range(0), 2.0);
  const slotjet::Coefficients c = slotjet::make_coefficients(s, 0.0);
  slotjet::initialize_profile(f, c);
  for (auto _ : state) benchmark::DoNotOptimize(slotjet::energy(f, c));
  state.SetItemsProcessed(state.iterations() * f.grid.size());
}
BENCHMARK(BM_Energy)->Arg(32)->Arg(64);

void BM_SolveHeight(benchmark::State& state) {
  double lam = -3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(slotjet::solve_height(lam, 1.0, 0.0, 2.0));
    lam = lam < 3 ? lam + 0.01 : -3;
  }
}
BENCHMARK(BM_SolveHeight);

void BM_Extract(benchmark::State& state) {
  const slotjet::DomainSpec s = bench_spec();
  slotjet::GridField f = slotjet::build(s, 1.0 / 64, 2.0);
  const slotjet::Coefficients c = slotjet::make_coefficients(s, 0.0);
  slotjet::initialize_profile(f, c);
  for (auto _ : state)
    benchmark::DoNotOptimize(slotjet::extract(f).downstream_height);
}
BENCHMARK(BM_Extract);

void BM_HarmonicFlux(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(
        slotjet::harmonic_flux_truncated(1, 0.2, kPi / 3, 4).Q);
}
BENCHMARK(BM_HarmonicFlux);

}  // namespace

BENCHMARK_MAIN();
