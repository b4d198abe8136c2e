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

#include "clusterlab/lattice.h"
#include "clusterlab/model.h"
#include "clusterlab/propagate.h"
#include "clusterlab/protocol.h"

namespace {

using namespace clusterlab;

// Evolution over a tenth of the cluster time; cost is dominated by matvecs.
void BM_PropagateSuperexchange(benchmark::State &state) {
    const HubbardParams p{1.0, 56.0, 66.0};
    Model m(ModelKind::kSuperexchange,
            LatticeGeometry::chain(static_cast<std::size_t>(state.range(0)), Boundary::kPeriodic));
    const auto h = m.hamiltonian(p);
    const StateVector psi = m.initial_state();
    const double t = 0.1 * cluster_time(p);
    PropagationReport report;
    for (auto _ : state) {
        benchmark::DoNotOptimize(propagate(*h, psi, t, {}, &report));
    }
    state.counters["matvecs"] = static_cast<double>(report.matvecs);
}
BENCHMARK(BM_PropagateSuperexchange)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_PropagateFermiHubbard(benchmark::State &state) {
    const HubbardParams p{1.0, 40.0, 50.0};
    Model m(ModelKind::kFermiHubbardGauged, LatticeGeometry::chain(6, Boundary::kPeriodic));
    const auto h = m.hamiltonian(p);
    const StateVector psi = m.initial_state();
    PropagationReport report;
    for (auto _ : state) {
        benchmark::DoNotOptimize(propagate(*h, psi, 1.0, {}, &report));
    }
    state.counters["matvecs"] = static_cast<double>(report.matvecs);
}
BENCHMARK(BM_PropagateFermiHubbard)->Unit(benchmark::kMillisecond);

void BM_EchoIsing(benchmark::State &state) {
    const HubbardParams p{1.0, 56.0, 66.0};
    Model m(ModelKind::kSuperexchange, LatticeGeometry::chain(10, Boundary::kPeriodic));
    const StateVector psi = m.initial_state();
    const double t = 0.1 * cluster_time(p);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_echo_ising(m, p, psi, t));
    }
}
BENCHMARK(BM_EchoIsing)->Unit(benchmark::kMillisecond);

}  // namespace
