#include <benchmark/benchmark.h>

#include "oising/liouvillian.hpp"
#include "oising/markovian.hpp"
#include "oising/noise.hpp"
#include "oising/nonmarkovian.hpp"

namespace {

using namespace oising;

ModelParams model(int n, double lambda, double t_max = 1.0) {
  ModelParams p;
  p.n_qubits = n;
  p.lambda = lambda;
  p.t_max = t_max;
  return p;
}

void BM_LindbladApply(benchmark::State& state) {
  const auto p = model(static_cast<int>(state.range(0)), 10.0);
  const LindbladGenerator gen(p);
  const auto rho = DensityMatrix::maximally_mixed(p.n_qubits).matrix();
  CMatrix out(rho.rows(), rho.cols());
  for (auto _ : state) {
    gen.apply(rho, out, true);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_LindbladApply)->Arg(4)->Arg(6)->Arg(8);

void BM_ShapeSpectrum(benchmark::State& state) {
  const auto white = noise::generate_white(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) {
    auto pink = noise::shape_spectrum(white, 1.0);
    benchmark::DoNotOptimize(pink.samples.data());
  }
}
BENCHMARK(BM_ShapeSpectrum)->Arg(4096)->Arg(16384);

void BM_TclEvolve(benchmark::State& state) {
  const auto p = model(static_cast<int>(state.range(0)), 100.0, 0.5);
  EvolutionGrid g;
  g.dt = 1.0 / p.f0;
  g.t_max = p.t_max;
  g.sample_stride = 50;
  const auto rho0 = DensityMatrix::pure(preset_state("unpolarized", p));
  const auto kernel = tcl_kernel(-1.0, p);
  for (auto _ : state) {
    auto s = evolve_nonmarkovian(rho0, p, kernel, g);
    benchmark::DoNotOptimize(s.m.data());
  }
}
BENCHMARK(BM_TclEvolve)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_LiouvillianSpectrum(benchmark::State& state) {
  const auto p = model(static_cast<int>(state.range(0)), 100.0);
  for (auto _ : state) {
    auto spec = liouvillian_spectrum(build_liouvillian(p));
    benchmark::DoNotOptimize(spec.gammas.data());
  }
}
BENCHMARK(BM_LiouvillianSpectrum)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
