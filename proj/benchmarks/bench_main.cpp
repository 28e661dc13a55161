#include "fracdyn/mlf.hpp"
#include "fracdyn/model.hpp"
#include "fracdyn/propagate.hpp"
#include "fracdyn/sweep.hpp"

#include <benchmark/benchmark.h>

#include <complex>

namespace {

using namespace fracdyn;

void BM_MlSeries(benchmark::State& state) {
  const double beta = state.range(0) / 10.0;
  const std::complex<double> z(0.5, -0.6);  // inside series_radius for every beta
  for (auto _ : state) benchmark::DoNotOptimize(mlf::ml(beta, z));
}
BENCHMARK(BM_MlSeries)->Arg(2)->Arg(5)->Arg(9);

void BM_MlContour(benchmark::State& state) {
  const double beta = state.range(0) / 10.0;
  const std::complex<double> z = std::polar(20.0, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(mlf::ml(beta, z));
}
BENCHMARK(BM_MlContour)->Arg(2)->Arg(5)->Arg(9);

void BM_Evolve(benchmark::State& state) {
  model::ModelParams p;
  p.coupling = 0.5;
  p.photons = 50;
  p.qubits = 2;
  const propagate::EvolutionSpec spec{propagate::Variant::NaberI, FractionalOrder(0.5),
                                      model::spectral_decompose(model::build_hamiltonian(p)),
                                      model::initial_state(p, model::InitialState::from_concurrence(0.5))};
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagate::evolve(spec, t));
    t = t < 20.0 ? t + 0.05 : 0.0;
  }
}
BENCHMARK(BM_Evolve);

void BM_Fig1Sweep(benchmark::State& state) {
  const auto& config = sweep::find_preset("fig1").config;
  for (auto _ : state) benchmark::DoNotOptimize(sweep::run_sweep(config));
}
BENCHMARK(BM_Fig1Sweep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
