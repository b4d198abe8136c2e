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

#include "clusterlab/protocol.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace clusterlab {

namespace {

// Single-site rotation exp(-i angle S^axis) on (up, down) amplitudes.
struct Rotation {
    cplx uu, ud, du, dd;  // new_up = uu*up + ud*down, new_down = du*up + dd*down
};

Rotation rotation(Axis axis, double angle) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    const cplx i(0.0, 1.0);
    switch (axis) {
        case Axis::kX:
            return {c, -i * s, -i * s, c};
        case Axis::kY:
            return {c, -s, s, c};
        case Axis::kZ:
            return {std::polar(1.0, -angle / 2.0), 0.0, 0.0, std::polar(1.0, angle / 2.0)};
    }
    throw std::invalid_argument("unknown pulse axis");
}

}  // namespace

void global_pulse_in_place(StateVector &psi, Axis axis, double angle) {
    const Basis &basis = psi.basis();
    const Rotation r = rotation(axis, angle);
    std::vector<cplx> &amps = psi.mutable_amplitudes();
    for (std::size_t j = 0; j < basis.site_count(); ++j) {
        const std::uint64_t bit = std::uint64_t{1} << j;
        for (std::size_t i = 0; i < basis.dimension(); ++i) {
            const Occupation &occ = basis.occupation(i);
            // Visit each (up, down) pair once, from its up member.
            if (!(occ.up & bit) || (occ.down & bit)) {
                continue;
            }
            if (axis == Axis::kZ) {
                amps[i] *= r.uu;
                continue;
            }
            const auto partner = basis.find(Occupation{occ.up & ~bit, occ.down | bit});
            if (!partner) {
                throw std::logic_error("pulse partner configuration missing from basis");
            }
            const cplx up = amps[i];
            const cplx down = amps[*partner];
            amps[i] = r.uu * up + r.ud * down;
            amps[*partner] = r.du * up + r.dd * down;
        }
        if (axis == Axis::kZ) {
            for (std::size_t i = 0; i < basis.dimension(); ++i) {
                const Occupation &occ = basis.occupation(i);
                if ((occ.down & bit) && !(occ.up & bit)) {
                    amps[i] *= r.dd;
                }
            }
        }
    }
}

StateVector global_pulse(const StateVector &psi, Axis axis, double angle) {
    StateVector out = psi;
    global_pulse_in_place(out, axis, angle);
    return out;
}

HubbardParams quench_omega(const HubbardParams &params) {
    const double arg = 2.0 * params.U * params.U - params.Omega * params.Omega;
    if (!(arg > 0.0)) {
        throw std::domain_error(
            "quench requires Omega < sqrt(2) U; got U = " + std::to_string(params.U) +
            ", Omega = " + std::to_string(params.Omega));
    }
    HubbardParams out = params;
    out.Omega = std::sqrt(arg);
    return out;
}

ProtocolSchedule &ProtocolSchedule::evolve(double duration) {
    segments.emplace_back(Evolve{duration});
    return *this;
}

ProtocolSchedule &ProtocolSchedule::pulse(Axis axis, double angle) {
    segments.emplace_back(Pulse{axis, angle});
    return *this;
}

ProtocolSchedule &ProtocolSchedule::quench() {
    segments.emplace_back(Quench{});
    return *this;
}

ProtocolSchedule &ProtocolSchedule::echo(double duration) {
    return evolve(duration / 2.0).pulse(Axis::kX, std::numbers::pi).evolve(duration / 2.0);
}

void ProtocolSchedule::validate() const {
    HubbardParams current = params;
    for (const Segment &s : segments) {
        if (const auto *e = std::get_if<Evolve>(&s)) {
            if (!std::isfinite(e->duration) || e->duration < 0.0) {
                throw std::invalid_argument("evolution durations must be finite and non-negative");
            }
        } else if (const auto *p = std::get_if<Pulse>(&s)) {
            if (!std::isfinite(p->angle)) {
                throw std::invalid_argument("pulse angle must be finite");
            }
        } else {
            current = quench_omega(current);
        }
    }
}

void RunReport::add(const PropagationReport &r) {
    ++propagations;
    matvecs += r.matvecs;
    error_estimate += r.error_estimate;
}

StateVector run_schedule(
    const Model &model,
    const ProtocolSchedule &schedule,
    const StateVector &psi0,
    const PropagationOptions &options,
    RunReport *report) {
    schedule.validate();
    if (psi0.basis_ptr() != model.basis()) {
        throw std::invalid_argument("initial state does not belong to the model basis");
    }
    HubbardParams current = schedule.params;
    StateVector psi = psi0;
    for (const Segment &s : schedule.segments) {
        if (const auto *e = std::get_if<Evolve>(&s)) {
            if (e->duration == 0.0) {
                continue;
            }
            const auto h = model.hamiltonian(current);
            PropagationReport r = propagate_in_place(*h, psi.mutable_amplitudes(), e->duration, options);
            if (report) {
                report->add(r);
            }
        } else if (const auto *p = std::get_if<Pulse>(&s)) {
            global_pulse_in_place(psi, p->axis, p->angle);
        } else {
            current = quench_omega(current);
        }
    }
    return psi;
}

StateVector run_echo_ising(
    const Model &model,
    const HubbardParams &params,
    const StateVector &psi0,
    double t,
    const PropagationOptions &options,
    RunReport *report) {
    ProtocolSchedule schedule{params, {}};
    schedule.echo(t);
    return run_schedule(model, schedule, psi0, options, report);
}

StateVector run_time_reversal(
    const Model &model,
    const HubbardParams &params,
    const StateVector &psi0,
    double t_forward,
    double t_backward,
    const PropagationOptions &options,
    RunReport *report) {
    ProtocolSchedule schedule{params, {}};
    schedule.echo(t_forward).quench().echo(t_backward);
    return run_schedule(model, schedule, psi0, options, report);
}

double two_site_unitary_offdiag(const HubbardParams &params, double t) {
    auto basis = std::make_shared<SpinBasis>(2);
    const Eigen::MatrixXd h =
        build_superexchange(LatticeGeometry::chain(2, Boundary::kOpen), params, basis, true).to_dense();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
    const Eigen::MatrixXd &v = eig.eigenvectors();
    cplx element = 0.0;
    for (Eigen::Index k = 0; k < v.cols(); ++k) {
        // Bit j set = spin up on site j: index 3 is up-up, 0 is down-down.
        element += v(3, k) * std::polar(1.0, -eig.eigenvalues()(k) * t) * v(0, k);
    }
    return std::abs(element);
}

double max_two_site_unitary_offdiag(const HubbardParams &params, double t_max, std::size_t samples) {
    if (!(t_max > 0.0) || samples < 2) {
        throw std::invalid_argument("need t_max > 0 and at least two samples");
    }
    const double dt = t_max / static_cast<double>(samples - 1);
    std::size_t best = 0;
    double best_value = -1.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double v = two_site_unitary_offdiag(params, dt * static_cast<double>(i));
        if (v > best_value) {
            best_value = v;
            best = i;
        }
    }
    double a = dt * static_cast<double>(best == 0 ? 0 : best - 1);
    double b = std::min(t_max, dt * static_cast<double>(best + 1));
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = two_site_unitary_offdiag(params, x1);
    double f2 = two_site_unitary_offdiag(params, x2);
    for (int it = 0; it < 80 && b - a > 1e-14 * t_max; ++it) {
        if (f1 > f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = two_site_unitary_offdiag(params, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = two_site_unitary_offdiag(params, x2);
        }
    }
    return std::max({best_value, f1, f2});
}

}  // namespace clusterlab
