#include <benchmark/benchmark.h>

#include "ctqw/network.hpp"
#include "ctqw/search.hpp"
#include "ctqw/spectrum.hpp"

namespace {

using namespace ctqw;

void BM_MkGenerate(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto net = mk_hierarchical(2, g);
    benchmark::DoNotOptimize(net.n_sites);
  }
}
BENCHMARK(BM_MkGenerate)->Arg(4)->Arg(6)->Arg(8);

void BM_LatticeSpectrumAnalytic(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const std::vector<int> sides(5, side);
  for (auto _ : state) {
    auto spec = lattice_spectrum_analytic(sides);
    benchmark::DoNotOptimize(spec.eigenvalues.sum());
  }
}
BENCHMARK(BM_LatticeSpectrumAnalytic)->Arg(4)->Arg(6);

void BM_Eigendecompose(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0));
  const auto lap = laplacian_dense(mk_hierarchical(2, g));
  for (auto _ : state) {
    auto spec = eigendecompose(lap);
    benchmark::DoNotOptimize(spec.eigenvalues[1]);
  }
}
BENCHMARK(BM_Eigendecompose)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_ZetaLogdet(benchmark::State& state) {
  const auto lap = laplacian_dense(hypercubic_lattice({int(state.range(0))}));
  for (auto _ : state) {
    auto zeta = zeta_logdet(lap, 2);
    benchmark::DoNotOptimize(zeta.value);
  }
}
BENCHMARK(BM_ZetaLogdet)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_SolveLevels(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  auto spec = lattice_spectrum_analytic(std::vector<int>(5, side));
  SearchConfig cfg;
  cfg.gamma = zeta_spectral(spec, 1).value;
  cfg.target = 0;
  cfg.grouped = group_by_target(spec, 0);
  for (auto _ : state) {
    auto levels = solve_levels(cfg);
    benchmark::DoNotOptimize(levels.gap());
  }
}
BENCHMARK(BM_SolveLevels)->Arg(4)->Arg(6);

void BM_AmplitudeGrid(benchmark::State& state) {
  auto spec = lattice_spectrum_analytic({4, 4, 4, 4, 4});
  SearchConfig cfg;
  cfg.gamma = zeta_spectral(spec, 1).value;
  cfg.target = 0;
  cfg.grouped = group_by_target(spec, 0);
  const auto levels = solve_levels(cfg);
  const double horizon = 4.0 * M_PI / levels.gap();
  for (auto _ : state) {
    double acc = 0.0;
    for (int i = 0; i < 1000; ++i)
      acc += std::norm(amplitude_spectral(cfg, levels, horizon * i / 999.0));
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_AmplitudeGrid);

}  // namespace

BENCHMARK_MAIN();
