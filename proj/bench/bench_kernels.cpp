// Copyright 2026 The QBPM Authors
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

// Serial reference kernels against the OpenMP kernels, plus a full forward pass.
//
//   ./bench_kernels --benchmark_filter=Hadamard

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "qbpm/kernels.hpp"
#include "qbpm/model.hpp"
#include "qbpm/statevector.hpp"

namespace {

using namespace qbpm;

std::vector<Complex> random_amps(int n) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    std::vector<Complex> a(std::size_t{1} << n);
    for (auto& v : a) v = Complex(g(rng), g(rng));
    return a;
}

const kernels::Mat2 kHadamard{M_SQRT1_2, M_SQRT1_2, M_SQRT1_2, -M_SQRT1_2};

template <bool Parallel>
void BM_Hadamard(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto amps = random_amps(n);
    int q = 0;
    for (auto _ : state) {
        const auto t = kernels::qubit_mask(n, q);
        if constexpr (Parallel) kernels::parallel::apply_matrix(amps, t, 0, kHadamard);
        else kernels::serial::apply_matrix(amps, t, 0, kHadamard);
        q = (q + 1) % n;
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(amps.size()));
}

template <bool Parallel>
void BM_Toffoli(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto amps = random_amps(n);
    const auto controls = kernels::qubit_mask(n, 0) | kernels::qubit_mask(n, 1);
    const auto target = kernels::qubit_mask(n, 2);
    for (auto _ : state) {
        if constexpr (Parallel) kernels::parallel::apply_x(amps, target, controls);
        else kernels::serial::apply_x(amps, target, controls);
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(amps.size()));
}

template <bool Parallel>
void BM_ExpectationZ(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto amps = random_amps(n);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (auto _ : state) {
        if constexpr (Parallel) kernels::parallel::expectation_z_all(amps, out);
        else kernels::serial::expectation_z_all(amps, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(amps.size()));
}

void BM_Forward(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int layers = static_cast<int>(state.range(1));
    const Model model = build_model({n, layers, 3, ModelSpec::default_selection(n, 3)});
    auto params = make_parameters(model);
    initialize_parameters(params, 1);
    std::vector<double> x(std::size_t{1} << n, 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(forward(x, params, model).probabilities.data());
}

BENCHMARK(BM_Hadamard<false>)->Name("Hadamard/serial")->DenseRange(12, 20, 4);
BENCHMARK(BM_Hadamard<true>)->Name("Hadamard/parallel")->DenseRange(12, 20, 4)->UseRealTime();
BENCHMARK(BM_Toffoli<false>)->Name("Toffoli/serial")->DenseRange(12, 20, 4);
BENCHMARK(BM_Toffoli<true>)->Name("Toffoli/parallel")->DenseRange(12, 20, 4)->UseRealTime();
BENCHMARK(BM_ExpectationZ<false>)->Name("ExpectationZ/serial")->DenseRange(12, 20, 4);
BENCHMARK(BM_ExpectationZ<true>)->Name("ExpectationZ/parallel")->DenseRange(12, 20, 4)->UseRealTime();
BENCHMARK(BM_Forward)->Args({15, 20})->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
