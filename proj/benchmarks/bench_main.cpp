#include <benchmark/benchmark.h>

#include <vector>

#include "fqc/optimizer.hpp"
#include "fqc/oracle.hpp"
#include "fqc/random.hpp"
#include "fqc/suppressor.hpp"

namespace {

std::vector<fqc::DataPoint> points(std::size_t k) {
  fqc::Rng rng(11);
  std::vector<fqc::DataPoint> out(k);
  for (auto& p : out) {
    p.features = {rng.uniform(-1.0, 1.0)};
    p.label = rng.uniform01() < 0.5 ? 0 : 1;
  }
  return out;
}

fqc::CircuitSpec spec(std::size_t n) {
  fqc::CircuitSpec s;
  s.n_params = n;
  s.data_dim = 1;
  return s;
}

void BM_AmplitudeVector(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto data = points(4);
  for (auto _ : state) benchmark::DoNotOptimize(fqc::amplitude_vector(spec(n), data, false));
}
BENCHMARK(BM_AmplitudeVector)->DenseRange(6, 14, 2);

void BM_BuildSuppressor(benchmark::State& state) {
  const auto degree = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fqc::build_suppressor(0.5, degree, 0.05));
}
BENCHMARK(BM_BuildSuppressor)->Arg(16)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

void BM_TrainQuantum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto data = points(4);
  fqc::QuantumConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(fqc::train_quantum(spec(n), data, cfg));
}
BENCHMARK(BM_TrainQuantum)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);

void BM_BruteForce(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto data = points(4);
  for (auto _ : state) benchmark::DoNotOptimize(fqc::brute_force(spec(n), data));
}
BENCHMARK(BM_BruteForce)->DenseRange(6, 14, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
