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

#ifndef CLUSTERLAB_PROTOCOL_H_
#define CLUSTERLAB_PROTOCOL_H_

#include <variant>
#include <vector>

#include "clusterlab/hamiltonian.h"
#include "clusterlab/lattice.h"
#include "clusterlab/model.h"
#include "clusterlab/propagate.h"
#include "clusterlab/state.h"

namespace clusterlab {

/// prod_j exp(-i angle S^axis_j). Rotates every singly occupied site and
/// acts as the identity on holes and doublons. Requires the spin-flipped
/// partner of each configuration to lie in the basis, which holds for
/// every basis this library builds.
StateVector global_pulse(const StateVector &psi, Axis axis, double angle);
void global_pulse_in_place(StateVector &psi, Axis axis, double angle);

/// Omega -> sqrt(2 U^2 - Omega^2), which maps J_zz to -J_zz. Throws
/// std::domain_error unless 2 U^2 - Omega^2 > 0.
HubbardParams quench_omega(const HubbardParams &params);

struct Evolve {
    double duration = 0.0;
};
struct Pulse {
    Axis axis = Axis::kX;
    double angle = 0.0;
};
/// Applies quench_omega to the current parameters.
struct Quench {};

using Segment = std::variant<Evolve, Pulse, Quench>;

/// Ordered protocol steps starting from fixed model parameters.
struct ProtocolSchedule {
    HubbardParams params;
    std::vector<Segment> segments;

    ProtocolSchedule &evolve(double duration);
    ProtocolSchedule &pulse(Axis axis, double angle);
    ProtocolSchedule &quench();
    /// Half evolution, pi pulse about x, half evolution.
    ProtocolSchedule &echo(double duration);

    /// Throws std::invalid_argument for negative or non-finite durations
    /// and std::domain_error for an invalid quench.
    void validate() const;
};

struct RunReport {
    std::size_t propagations = 0;
    std::size_t matvecs = 0;
    double error_estimate = 0.0;

    void add(const PropagationReport &r);
};

StateVector run_schedule(
    const Model &model,
    const ProtocolSchedule &schedule,
    const StateVector &psi0,
    const PropagationOptions &options = {},
    RunReport *report = nullptr);

/// exp(-i H t/2) Pi exp(-i H t/2) psi0 with Pi = exp(-i pi S^x).
StateVector run_echo_ising(
    const Model &model,
    const HubbardParams &params,
    const StateVector &psi0,
    double t,
    const PropagationOptions &options = {},
    RunReport *report = nullptr);

/// Echo forward for t_forward, quench, echo for t_backward under the
/// quenched drive. Each half carries its own pi pulse.
StateVector run_time_reversal(
    const Model &model,
    const HubbardParams &params,
    const StateVector &psi0,
    double t_forward,
    double t_backward,
    const PropagationOptions &options = {},
    RunReport *report = nullptr);

/// |<up up| exp(-i H t) |down down>| for the two-site spin-1/2
/// superexchange model with flip-flop terms, by dense diagonalization.
double two_site_unitary_offdiag(const HubbardParams &params, double t);

/// Maximum of two_site_unitary_offdiag over [0, t_max]: a uniform scan with
/// `samples` points followed by golden-section refinement of the best bracket.
double max_two_site_unitary_offdiag(const HubbardParams &params, double t_max, std::size_t samples);

}  // namespace clusterlab

#endif  // CLUSTERLAB_PROTOCOL_H_
