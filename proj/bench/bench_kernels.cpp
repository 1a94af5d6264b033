// Copyright 2026 The sfvqd Authors
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

// OpenMP kernels against the serial reference, plus a full cost evaluation.
// Set OMP_NUM_THREADS to compare thread counts.

#include <vector>

#include <benchmark/benchmark.h>

#include "sfvqd/ansatz.hpp"
#include "sfvqd/hamio.hpp"
#include "sfvqd/kernels.hpp"
#include "sfvqd/vqd.hpp"

namespace {

using namespace sfvqd;

std::vector<Complex> random_amplitudes(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Complex> a(std::size_t{1} << n);
  for (auto& x : a) x = {rng.normal(), rng.normal()};
  return a;
}

template <bool Parallel>
void BM_ApplyAGate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto amps = random_amplitudes(n, 1);
  const Eigen::MatrixXcd m = a_gate_matrix(0.3, 0.7);
  const std::vector<Qubit> targets = {n / 2 - 1, n / 2};
  const std::vector<Qubit> controls;
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::apply_matrix(amps, n, m, targets, controls);
    } else {
      reference::apply_matrix(amps, n, m, targets, controls);
    }
    benchmark::DoNotOptimize(amps.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(amps.size()));
}

template <bool Parallel>
void BM_ControlledPair(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto amps = random_amplitudes(n, 2);
  const Eigen::MatrixXcd m = a_gate_matrix(0.5, -1.5707963267948966);
  const std::vector<Qubit> targets = {0, 1};
  const std::vector<Qubit> controls = {n - 1};
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::apply_matrix(amps, n, m, targets, controls);
    } else {
      reference::apply_matrix(amps, n, m, targets, controls);
    }
    benchmark::DoNotOptimize(amps.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(amps.size()));
}

template <bool Parallel>
void BM_InnerProduct(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_amplitudes(n, 3), b = random_amplitudes(n, 4);
  for (auto _ : state) {
    Complex r = Parallel ? kernels::inner_product(a, b) : reference::inner_product(a, b);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.size()));
}

void BM_SfVqdCostBeH2(benchmark::State& state) {
  const PauliSum h = load(SFVQD_FIXTURE_DIR "/beh2_sym-stretch_l+0.000.json").hamiltonian();
  VqdConfig c;
  c.sector = {2, 2, HalfInt(0)};
  c.layers = static_cast<std::size_t>(state.range(0));
  const CostEvaluator ev(h, c, 4);
  Rng rng(5);
  const std::vector<double> p = init_params(AnsatzKind::SSP, 4, c.layers, rng).flatten();
  for (auto _ : state) benchmark::DoNotOptimize(ev.statevector(p, {}));
}

BENCHMARK(BM_ApplyAGate<true>)->DenseRange(10, 20, 5)->Name("apply_a_gate/openmp");
BENCHMARK(BM_ApplyAGate<false>)->DenseRange(10, 20, 5)->Name("apply_a_gate/serial");
BENCHMARK(BM_ControlledPair<true>)->DenseRange(10, 20, 5)->Name("controlled_pair/openmp");
BENCHMARK(BM_ControlledPair<false>)->DenseRange(10, 20, 5)->Name("controlled_pair/serial");
BENCHMARK(BM_InnerProduct<true>)->DenseRange(10, 20, 5)->Name("inner_product/openmp");
BENCHMARK(BM_InnerProduct<false>)->DenseRange(10, 20, 5)->Name("inner_product/serial");
BENCHMARK(BM_SfVqdCostBeH2)->Arg(3)->Arg(6)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
