// Copyright 2026 The tcgsim Authors
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

#include <numbers>

#include "golden.h"
#include "tcg/circuit.h"
#include "tcg/composer.h"
#include "tcg/noise.h"
#include "tcg/tomography.h"

namespace {

using namespace tcg;

void BM_GoldenSuite(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(tools::run_golden_suite());
    }
}
BENCHMARK(BM_GoldenSuite)->Unit(benchmark::kMillisecond);

void BM_ComposeCu(benchmark::State &state) {
    double th = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cu(th, 0.7));
        th += 1e-3;
    }
}
BENCHMARK(BM_ComposeCu);

void BM_GhzStateVector(benchmark::State &state) {
    const int m = static_cast<int>(state.range(0));
    const Circuit c = ghz_circuit(m, 0, "CU");
    const StateVector z = StateVector::basis(c.space(), std::vector<int>(m, 0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate(c, z));
    }
}
BENCHMARK(BM_GhzStateVector)->DenseRange(3, 7, 2);

void BM_GhzNoisy(benchmark::State &state) {
    const int m = static_cast<int>(state.range(0));
    const NoiseModel noise = NoiseModel::from_device(DeviceConfig::reference());
    const Circuit c = ghz_circuit(m, 0, "CU");
    const DensityMatrix z = DensityMatrix::pure(StateVector::basis(c.space(), std::vector<int>(m, 0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate(c, z, &noise));
    }
}
BENCHMARK(BM_GhzNoisy)->DenseRange(3, 4)->Unit(benchmark::kMillisecond);

void BM_QstThreeQubits(benchmark::State &state) {
    const Circuit c = ghz_circuit(3, 0, "CU");
    const StateVector out = simulate(c, StateVector::basis(c.space(), {0, 0, 0}));
    const DensityMatrix rho = DensityMatrix::pure(restrict_computational(out));
    for (auto _ : state) {
        benchmark::DoNotOptimize(qst(rho));
    }
}
BENCHMARK(BM_QstThreeQubits)->Unit(benchmark::kMillisecond);

void BM_QptCu(benchmark::State &state) {
    Circuit c = Circuit::chain(2);
    c.add("cu", {0, 1}, {{"theta", 1.1}, {"phi", 0.3}});
    for (auto _ : state) {
        benchmark::DoNotOptimize(qpt(c));
    }
}
BENCHMARK(BM_QptCu)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
