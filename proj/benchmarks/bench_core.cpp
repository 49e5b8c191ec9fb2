#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

#include "sshqed/classify.hpp"
#include "sshqed/eigensolver.hpp"
#include "sshqed/response.hpp"
#include "sshqed/spectra.hpp"
#include "sshqed/sweep.hpp"
#include "sshqed/tracking.hpp"

using namespace sshqed;

namespace {

constexpr double pi = std::numbers::pi;

EffectiveChain strong_end_chain(std::size_t n) { return chain_from_theta(n, {0.3 * pi}, {{1, 4.0}}); }

void BM_TridiagonalQL(benchmark::State& state) {
  const auto h = build_hamiltonian(strong_end_chain(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(tridiagonal_ql(h.diag, h.offdiag));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TridiagonalQL)->RangeMultiplier(2)->Range(16, 256)->Complexity(benchmark::oNCubed);

void BM_Jacobi(benchmark::State& state) {
  const auto h = build_hamiltonian(strong_end_chain(static_cast<std::size_t>(state.range(0))));
  const DenseMatrix dense = h.to_dense();
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_symmetric(dense));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Jacobi)->RangeMultiplier(2)->Range(16, 128)->Complexity(benchmark::oNCubed);

void BM_EigendecomposeOpen(benchmark::State& state) {
  const auto chain = strong_end_chain(100);
  for (auto _ : state) benchmark::DoNotOptimize(eigendecompose(chain));
}
BENCHMARK(BM_EigendecomposeOpen);

// Zero end potential at θ = π: exactly degenerate edge pair, exercising the
// cluster localization path.
void BM_EigendecomposeDegenerate(benchmark::State& state) {
  const auto chain = chain_from_theta(100, {pi}, {});
  for (auto _ : state) benchmark::DoNotOptimize(eigendecompose(chain));
}
BENCHMARK(BM_EigendecomposeDegenerate);

void BM_EigendecomposePeriodic(benchmark::State& state) {
  const auto chain = chain_from_theta(100, {0.3 * pi}, {{1, 4.0}}, Boundary::periodic);
  for (auto _ : state) benchmark::DoNotOptimize(eigendecompose(chain));
}
BENCHMARK(BM_EigendecomposePeriodic);

void BM_ClassifySpectrum(benchmark::State& state) {
  const auto chain = strong_end_chain(100);
  const auto s = eigendecompose(chain);
  for (auto _ : state) benchmark::DoNotOptimize(classify_spectrum(s, chain));
}
BENCHMARK(BM_ClassifySpectrum);

// One V1 column of the unilateral phase diagram.
void BM_PhaseDiagramSlice(benchmark::State& state) {
  const std::vector<double> v{2.0};
  const auto theta = linspace(0.0, 2 * pi, 201);
  for (auto _ : state) benchmark::DoNotOptimize(phase_diagram_unilateral(v, theta, 100));
}
BENCHMARK(BM_PhaseDiagramSlice)->Unit(benchmark::kMillisecond);

void BM_InversionTrace(benchmark::State& state) {
  const auto phi = linspace(0.0, 2 * pi, 401);
  for (auto _ : state) benchmark::DoNotOptimize(trace_band_inversion(phi, 2.5, 100));
}
BENCHMARK(BM_InversionTrace)->Unit(benchmark::kMillisecond);

void BM_ResponseEigenSum(benchmark::State& state) {
  const auto s = eigendecompose(strong_end_chain(100));
  const DriveSpec drive{1, -0.3, 1.0, 0.05};
  for (auto _ : state) benchmark::DoNotOptimize(steady_state_response(s, drive));
}
BENCHMARK(BM_ResponseEigenSum);

void BM_ResponseDirect(benchmark::State& state) {
  const auto h = build_hamiltonian(strong_end_chain(100));
  const DriveSpec drive{1, -0.3, 1.0, 0.05};
  for (auto _ : state) benchmark::DoNotOptimize(response_amplitudes_direct(h, drive));
}
BENCHMARK(BM_ResponseDirect);

void BM_FrequencyScan(benchmark::State& state) {
  const auto s = eigendecompose(strong_end_chain(100));
  const auto omega = linspace(-5.0, 5.0, 2001);
  for (auto _ : state) benchmark::DoNotOptimize(frequency_scan(s, 1, omega, 1.0, 0.05));
}
BENCHMARK(BM_FrequencyScan)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
