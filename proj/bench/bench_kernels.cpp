// Copyright 2026 The dvqe Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// Serial reference kernels against their OpenMP counterparts.
#include <complex>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "dvqe/kernels.hpp"

namespace {

using dvqe::kernels::Complex;
using dvqe::kernels::RotationAxis;

std::vector<Complex> make_state(std::size_t qubits) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    std::vector<Complex> v(std::size_t{1} << qubits);
    for (auto &a : v) {
        a = {g(rng), g(rng)};
    }
    return v;
}

template <bool Parallel> void BM_Rotate(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto amps = make_state(n);
    std::size_t q = 0;
    for (auto _ : state) {
        if constexpr (Parallel) {
            dvqe::kernels::omp::rotate(amps, q, RotationAxis::Y, 0.3);
        } else {
            dvqe::kernels::serial::rotate(amps, q, RotationAxis::Y, 0.3);
        }
        q = (q + 1) % n;
        benchmark::DoNotOptimize(amps.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(amps.size()));
}

template <bool Parallel> void BM_ControlledZ(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto amps = make_state(n);
    for (auto _ : state) {
        if constexpr (Parallel) {
            dvqe::kernels::omp::controlled_z(amps, 0, n - 1);
        } else {
            dvqe::kernels::serial::controlled_z(amps, 0, n - 1);
        }
        benchmark::DoNotOptimize(amps.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(amps.size()));
}

template <bool Parallel> void BM_PauliExpectation(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto amps = make_state(n);
    const std::uint64_t x = 0b1010;
    const std::uint64_t z = 0b0110;
    for (auto _ : state) {
        Complex e;
        if constexpr (Parallel) {
            e = dvqe::kernels::omp::pauli_expectation(amps, x, z);
        } else {
            e = dvqe::kernels::serial::pauli_expectation(amps, x, z);
        }
        benchmark::DoNotOptimize(e);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(amps.size()));
}

template <bool Parallel> void BM_ZeroProbability(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto amps = make_state(n);
    for (auto _ : state) {
        double p;
        if constexpr (Parallel) {
            p = dvqe::kernels::omp::zero_probability(amps, n - 1);
        } else {
            p = dvqe::kernels::serial::zero_probability(amps, n - 1);
        }
        benchmark::DoNotOptimize(p);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(amps.size()));
}

#define DVQE_BENCH_PAIR(fn)                                            \
    BENCHMARK(fn<false>)->Name(#fn "/serial")->DenseRange(10, 22, 4);  \
    BENCHMARK(fn<true>)->Name(#fn "/omp")->DenseRange(10, 22, 4)

DVQE_BENCH_PAIR(BM_Rotate);
DVQE_BENCH_PAIR(BM_ControlledZ);
DVQE_BENCH_PAIR(BM_PauliExpectation);
DVQE_BENCH_PAIR(BM_ZeroProbability);

} // namespace

BENCHMARK_MAIN();
