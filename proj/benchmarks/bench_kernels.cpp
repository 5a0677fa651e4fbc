#include <random>

#include <benchmark/benchmark.h>

#include "qlm/evolve.hpp"
#include "qlm/fourier.hpp"
#include "qlm/operators.hpp"

namespace {

std::vector<qlm::Complex> random_amplitudes(std::size_t n) {
  std::mt19937_64 rng(n);
  std::normal_distribution<double> g;
  std::vector<qlm::Complex> a(n);
  for (auto& z : a) z = {g(rng), g(rng)};
  return a;
}

void BM_Forward(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const qlm::FourierPlan plan(n);
  const auto in = random_amplitudes(n);
  std::vector<qlm::Complex> out(n);
  for (auto _ : state) {
    plan.forward(in, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_Forward)->Arg(8)->Arg(21)->Arg(64)->Arg(256);

void BM_PlanBuild(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qlm::FourierPlan(static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_PlanBuild)->Arg(21)->Arg(256);

void BM_Step(benchmark::State& state, qlm::Integrator integrator) {
  const auto n = static_cast<std::size_t>(state.range(0));
  qlm::Propagator prop(n, {1.0, qlm::PotentialSpec::cosine_drive(0.1, 1e-4), {}});
  auto psi = random_amplitudes(n);
  double t = 0.0;
  for (auto _ : state) {
    if (integrator == qlm::Integrator::split_step) {
      prop.advance_split(psi, t, 0.01);
    } else {
      prop.advance_expm(psi, t, 0.01);
    }
    t += 0.01;
    benchmark::DoNotOptimize(psi.data());
  }
}
BENCHMARK_CAPTURE(BM_Step, split_step, qlm::Integrator::split_step)->Arg(21)->Arg(64);
BENCHMARK_CAPTURE(BM_Step, expm_midpoint, qlm::Integrator::expm_midpoint)->Arg(21)->Arg(64);

void BM_OwnershipOperator(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qlm::ownership_operator(static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_OwnershipOperator)->Arg(21)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
