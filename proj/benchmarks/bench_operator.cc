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
#include <vector>

#include "clusterlab/lattice.h"
#include "clusterlab/model.h"
#include "clusterlab/state.h"

namespace {

using namespace clusterlab;

LatticeGeometry chain(benchmark::State &state) {
    return LatticeGeometry::chain(static_cast<std::size_t>(state.range(0)), Boundary::kPeriodic);
}

void BM_BuildFermiHubbard(benchmark::State &state) {
    const HubbardParams p{1.0, 115.0, 140.0};
    const auto g = chain(state);
    for (auto _ : state) {
        Model m(ModelKind::kFermiHubbardGauged, g);
        benchmark::DoNotOptimize(m.hamiltonian(p)->nonzeros());
    }
}
BENCHMARK(BM_BuildFermiHubbard)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

// One H|psi>; the counter reports stored nonzeros touched per second.
void BM_ApplyFermiHubbard(benchmark::State &state) {
    const HubbardParams p{1.0, 115.0, 140.0};
    Model m(ModelKind::kFermiHubbardGauged, chain(state));
    const auto h = m.hamiltonian(p);
    const StateVector psi = m.initial_state();
    std::vector<cplx> out(h->dimension());
    for (auto _ : state) {
        h->apply(psi.amplitudes(), out);
        benchmark::DoNotOptimize(out.data());
    }
    state.counters["nnz/s"] =
        benchmark::Counter(static_cast<double>(h->nonzeros()), benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_ApplyFermiHubbard)->Arg(6)->Arg(8);

void BM_ApplySuperexchange(benchmark::State &state) {
    const HubbardParams p{1.0, 56.0, 66.0};
    Model m(ModelKind::kSuperexchange, chain(state));
    const auto h = m.hamiltonian(p);
    const StateVector psi = m.initial_state();
    std::vector<cplx> out(h->dimension());
    for (auto _ : state) {
        h->apply(psi.amplitudes(), out);
        benchmark::DoNotOptimize(out.data());
    }
    state.counters["nnz/s"] =
        benchmark::Counter(static_cast<double>(h->nonzeros()), benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_ApplySuperexchange)->Arg(12)->Arg(16);

}  // namespace
