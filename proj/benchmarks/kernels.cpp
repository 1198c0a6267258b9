// Copyright 2026 The kharper Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include <random>

#include "kharper/chebyshev.hpp"
#include "kharper/evolution.hpp"
#include "kharper/harper_model.hpp"
#include "kharper/imperfections.hpp"
#include "kharper/observables.hpp"
#include "kharper/slice.hpp"
#include "kharper/statevector.hpp"

namespace kharper {
namespace {

QuantumState random_state(int n, int system, std::optional<int> ancilla) {
  QuantumState s(n, {0, system}, ancilla);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (auto& a : s.amplitudes()) a = {g(rng), g(rng)};
  s.normalize();
  return s;
}

HarperParams golden(int n_r) {
  return HarperParams::cylinder(2, 27, n_r, nearest_hbar(n_r, golden_hbar_fraction()).m);
}

void BM_Hadamard(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  QuantumState s = random_state(n, n, {});
  for (auto _ : st) {
    for (int q = 0; q < n; ++q) apply_gate(s, Hadamard{q});
  }
  st.SetItemsProcessed(st.iterations() * n * static_cast<std::int64_t>(s.dimension()));
}
BENCHMARK(BM_Hadamard)->DenseRange(10, 20, 5);

void BM_ControlledPhase(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  QuantumState s = random_state(n, n, {});
  for (auto _ : st) {
    for (int q = 1; q < n; ++q) apply_gate(s, PhaseOnMask{(std::uint64_t{1} << q) | 1, 0.3});
  }
  st.SetItemsProcessed(st.iterations() * (n - 1) * static_cast<std::int64_t>(s.dimension()));
}
BENCHMARK(BM_ControlledPhase)->DenseRange(10, 20, 5);

void BM_QftGates(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  QuantumState s = random_state(n, n, {});
  const auto seq = qft_sequence({0, n}, false);
  for (auto _ : st) apply_sequence(s, seq);
}
BENCHMARK(BM_QftGates)->DenseRange(8, 16, 4);

void BM_QftFft(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  QuantumState s = random_state(n, n, {});
  for (auto _ : st) apply_qft(s, {0, n}, false);
}
BENCHMARK(BM_QftFft)->DenseRange(8, 16, 4);

void BM_ExactStep(benchmark::State& st) {
  const int n_r = static_cast<int>(st.range(0));
  const FloquetStepper stepper(golden(n_r), MethodConfig{});
  QuantumState s = stepper.zero_state();
  for (auto _ : st) stepper.step(s);
}
BENCHMARK(BM_ExactStep)->DenseRange(8, 16, 4);

void BM_SliceKick(benchmark::State& st) {
  const int n_r = static_cast<int>(st.range(0));
  const SliceKickOperator op(2.0, 1, n_r, {0, n_r}, {40, false});
  QuantumState s = random_state(n_r + 1, n_r, n_r);
  for (auto _ : st) op.apply(s);
}
BENCHMARK(BM_SliceKick)->DenseRange(8, 16, 4);

void BM_SliceKickGates(benchmark::State& st) {
  const int n_r = static_cast<int>(st.range(0));
  const auto seq = slice_kick_sequence(2.0, 1, n_r, {0, n_r}, {40, false});
  QuantumState s = random_state(n_r + 1, n_r, n_r);
  for (auto _ : st) apply_sequence(s, seq);
  st.counters["gates"] = static_cast<double>(seq.gate_count());
}
BENCHMARK(BM_SliceKickGates)->DenseRange(8, 12, 2);

void BM_ChebyshevKick(benchmark::State& st) {
  const int n_r = static_cast<int>(st.range(0));
  const ChebyshevKickOperator op(2.0, 1, {0, n_r}, chebyshev_coefficients(64, 6), 0.0);
  QuantumState s = random_state(n_r, n_r, {});
  for (auto _ : st) op.apply(s);
  st.counters["gates"] = static_cast<double>(op.gate_count());
}
BENCHMARK(BM_ChebyshevKick)->DenseRange(8, 16, 4);

void BM_NoisySliceStep(benchmark::State& st) {
  const int n_r = static_cast<int>(st.range(0));
  MethodConfig method;
  method.method = Method::slice;
  const FloquetStepper stepper(golden(n_r), method);
  const ImperfectionChannel noise(sample_disorder(stepper.num_qubits(), 1e-5, 3));
  QuantumState s = stepper.zero_state();
  for (auto _ : st) stepper.step(s, noise);
  st.counters["gates"] = static_cast<double>(stepper.gate_count());
}
BENCHMARK(BM_NoisySliceStep)->DenseRange(6, 9, 1)->Unit(benchmark::kMillisecond);

void BM_Husimi(benchmark::State& st) {
  const auto N = static_cast<std::size_t>(st.range(0));
  const auto psi = gaussian_packet(N, 8, 8, double(N) / 2, double(N) / 2);
  for (auto _ : st) benchmark::DoNotOptimize(husimi(psi, 8, 8));
}
BENCHMARK(BM_Husimi)->RangeMultiplier(2)->Range(128, 1024)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace kharper

BENCHMARK_MAIN();
