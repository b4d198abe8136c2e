// Copyright 2026 The Clusterlab Authors
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

#include <cstddef>

#include "clusterlab/basis.h"

namespace {

using clusterlab::FockBasis;
using clusterlab::FockSector;
using clusterlab::Spin1Basis;

// Half-filled chains: the Fock sector grows as C(2L, L).
void BM_FockBasisHalfFilling(benchmark::State &state) {
    const auto sites = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        FockBasis basis(sites, sites);
        benchmark::DoNotOptimize(basis.dimension());
    }
    state.counters["dimension"] = static_cast<double>(FockBasis::count(sites, sites, FockSector::kAll));
}
BENCHMARK(BM_FockBasisHalfFilling)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_FockBasisLookup(benchmark::State &state) {
    const FockBasis basis(8, 8);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(basis.find_state(basis.state(i)));
        i = (i + 7919) % basis.dimension();
    }
}
BENCHMARK(BM_FockBasisLookup);

void BM_Spin1BasisOneHole(benchmark::State &state) {
    const auto sites = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        Spin1Basis basis(sites, 1);
        benchmark::DoNotOptimize(basis.dimension());
    }
}
BENCHMARK(BM_Spin1BasisOneHole)->DenseRange(6, 12, 3)->Unit(benchmark::kMillisecond);

}  // namespace
