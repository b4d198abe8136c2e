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

#include "clusterlab/observables.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace clusterlab {

namespace {

std::vector<std::size_t> all_sites_if_empty(const Basis &basis, std::span<const std::size_t> region) {
    std::vector<std::size_t> out(region.begin(), region.end());
    if (out.empty()) {
        out.resize(basis.site_count());
        std::iota(out.begin(), out.end(), std::size_t{0});
    }
    for (std::size_t s : out) {
        if (s >= basis.site_count()) {
            throw std::out_of_range("site " + std::to_string(s) + " out of range");
        }
    }
    return out;
}

// Applies prod S^axis to configuration `occ`. Returns false when a support
// site is not singly occupied.
bool apply_string(const Occupation &occ, std::span<const SiteOp> ops, Occupation &target, cplx &factor) {
    std::uint64_t flip = 0;
    factor = 1.0;
    for (const SiteOp &op : ops) {
        if (!occ.singly_occupied(op.site)) {
            return false;
        }
        const bool up = (occ.up >> op.site) & 1u;
        switch (op.axis) {
            case Axis::kX:
                factor *= 0.5;
                flip |= std::uint64_t{1} << op.site;
                break;
            case Axis::kY:
                factor *= up ? cplx(0.0, 0.5) : cplx(0.0, -0.5);
                flip |= std::uint64_t{1} << op.site;
                break;
            case Axis::kZ:
                factor *= up ? 0.5 : -0.5;
                break;
        }
    }
    target = Occupation{occ.up ^ flip, occ.down ^ flip};
    return true;
}

void check_distinct(std::span<const SiteOp> ops, std::size_t sites) {
    std::uint64_t seen = 0;
    for (const SiteOp &op : ops) {
        if (op.site >= sites) {
            throw std::out_of_range("operator site out of range");
        }
        const std::uint64_t bit = std::uint64_t{1} << op.site;
        if (seen & bit) {
            throw std::invalid_argument("operator string sites must be distinct");
        }
        seen |= bit;
    }
}

}  // namespace

cplx spin_string_expectation(const StateVector &psi, std::span<const SiteOp> ops) {
    const Basis &basis = psi.basis();
    check_distinct(ops, basis.site_count());
    cplx sum = 0.0;
    Occupation target;
    cplx factor;
    for (std::size_t i = 0; i < basis.dimension(); ++i) {
        if (psi[i] == 0.0 || !apply_string(basis.occupation(i), ops, target, factor)) {
            continue;
        }
        const auto t = target == basis.occupation(i) ? std::optional<std::size_t>(i) : basis.find(target);
        if (t) {
            sum += std::conj(psi[*t]) * factor * psi[i];
        }
    }
    return sum;
}

double collective_spin(const StateVector &psi, Axis axis, std::span<const std::size_t> region) {
    double sum = 0.0;
    for (std::size_t s : all_sites_if_empty(psi.basis(), region)) {
        const SiteOp op{s, axis};
        sum += spin_string_expectation(psi, std::span(&op, 1)).real();
    }
    return sum;
}

std::vector<cplx> apply_collective_spin(const StateVector &psi, Axis axis, std::span<const std::size_t> region) {
    const Basis &basis = psi.basis();
    std::vector<cplx> out(basis.dimension(), 0.0);
    Occupation target;
    cplx factor;
    for (std::size_t s : all_sites_if_empty(basis, region)) {
        const SiteOp op{s, axis};
        for (std::size_t i = 0; i < basis.dimension(); ++i) {
            if (psi[i] == 0.0 || !apply_string(basis.occupation(i), std::span(&op, 1), target, factor)) {
                continue;
            }
            const auto t = axis == Axis::kZ ? std::optional<std::size_t>(i) : basis.find(target);
            if (!t) {
                throw std::logic_error("spin-flipped configuration missing from basis");
            }
            out[*t] += factor * psi[i];
        }
    }
    return out;
}

double symmetrized_collective_correlator(const StateVector &psi, Axis a, Axis b) {
    // Same-site terms cancel for a != b and give 1/2 for a == b.
    const std::size_t sites = psi.basis().site_count();
    double sum = 0.0;
    for (std::size_t j = 0; j < sites; ++j) {
        for (std::size_t k = 0; k < sites; ++k) {
            if (j == k) {
                if (a == b) {
                    double single = 0.0;
                    for (std::size_t i = 0; i < psi.dimension(); ++i) {
                        if (psi.basis().occupation(i).singly_occupied(j)) {
                            single += std::norm(psi[i]);
                        }
                    }
                    sum += 0.5 * single;
                }
                continue;
            }
            const SiteOp ops[2] = {{j, a}, {k, b}};
            sum += 2.0 * spin_string_expectation(psi, ops).real();
        }
    }
    return sum;
}

StabilizerSpec stabilizer_spec(const LatticeGeometry &geometry, std::size_t site) {
    if (site >= geometry.site_count()) {
        throw std::out_of_range("stabilizer site out of range");
    }
    StabilizerSpec spec;
    spec.center = site;
    spec.neighbors = geometry.neighbors(site);
    const std::size_t n = spec.neighbors.size();
    double sign;
    if (n % 2 == 0) {
        spec.center_axis = Axis::kX;
        sign = ((n / 2 + 1) % 2 == 0) ? 1.0 : -1.0;
    } else {
        spec.center_axis = Axis::kY;
        sign = (((n + 1) / 2) % 2 == 0) ? 1.0 : -1.0;
    }
    spec.prefactor = sign * std::ldexp(1.0, static_cast<int>(n + 1));
    return spec;
}

double stabilizer(const StateVector &psi, const StabilizerSpec &spec) {
    std::vector<SiteOp> ops;
    ops.push_back({spec.center, spec.center_axis});
    for (std::size_t k : spec.neighbors) {
        ops.push_back({k, Axis::kZ});
    }
    return spec.prefactor * spin_string_expectation(psi, ops).real();
}

double stabilizer(const StateVector &psi, const LatticeGeometry &geometry, std::size_t site) {
    return stabilizer(psi, stabilizer_spec(geometry, site));
}

double fidelity(const StateVector &psi, const StateVector &phi) {
    if (psi.basis_ptr() == phi.basis_ptr()) {
        return std::norm(inner_product(psi, phi));
    }
    if (psi.basis().site_count() != phi.basis().site_count()) {
        throw std::invalid_argument("fidelity between states on different lattices");
    }
    const bool psi_small = psi.dimension() <= phi.dimension();
    const StateVector &small = psi_small ? psi : phi;
    const StateVector &big = psi_small ? phi : psi;
    cplx overlap = 0.0;
    for (std::size_t i = 0; i < small.dimension(); ++i) {
        const auto j = big.basis().find(small.basis().occupation(i));
        if (!j) {
            throw std::invalid_argument(
                "fidelity: basis '" + std::string(small.basis().name()) + "' does not embed into '" +
                std::string(big.basis().name()) + "'");
        }
        overlap += std::conj(small[i]) * big[*j];
    }
    return std::norm(overlap);
}

double hole_density(const StateVector &psi, std::size_t site) {
    if (site >= psi.basis().site_count()) {
        throw std::out_of_range("hole density site out of range");
    }
    double p = 0.0;
    for (std::size_t i = 0; i < psi.dimension(); ++i) {
        if (psi.basis().occupation(i).empty(site)) {
            p += std::norm(psi[i]);
        }
    }
    return p;
}

ClusterEstimate collective_cluster_estimate(
    const Model &model,
    const HubbardParams &params,
    const StateVector &psi0,
    std::span<const std::size_t> region,
    double t,
    const PropagationOptions &options) {
    const std::vector<std::size_t> sites = all_sites_if_empty(psi0.basis(), region);
    ClusterEstimate out;
    const StateVector psi =
        run_time_reversal(model, params, psi0, t, cluster_time(params), options, &out.report);
    out.collective_sx = collective_spin(psi, Axis::kX, sites);
    out.estimate = -2.0 * out.collective_sx / static_cast<double>(sites.size());
    return out;
}

OtocResult otoc(
    const Model &model,
    const HubbardParams &params,
    const StateVector &psi0,
    double theta,
    double t,
    const PropagationOptions &options) {
    const std::vector<cplx> v_psi = apply_collective_spin(psi0, Axis::kX);
    cplx mean = 0.0;
    double second = 0.0;
    for (std::size_t i = 0; i < psi0.dimension(); ++i) {
        mean += std::conj(psi0[i]) * v_psi[i];
        second += std::norm(v_psi[i]);
    }
    const double variance = second - std::norm(mean);
    if (!(variance < 1e-10)) {
        throw std::invalid_argument(
            "OTOC initial state is not an S^x eigenstate (variance " + std::to_string(variance) + ")");
    }
    OtocResult out;
    out.eigenvalue = mean.real();

    ProtocolSchedule schedule{params, {}};
    schedule.echo(t).pulse(Axis::kX, theta).quench().echo(t);
    const StateVector phi1 = run_schedule(model, schedule, psi0, options, &out.report);
    const StateVector phi2 =
        run_schedule(model, schedule, StateVector(psi0.basis_ptr(), v_psi), options, &out.report);

    const std::vector<cplx> v_phi2 = apply_collective_spin(phi2, Axis::kX);
    const std::vector<cplx> v_phi1 = apply_collective_spin(phi1, Axis::kX);
    cplx c = 0.0;
    cplx r = 0.0;
    for (std::size_t i = 0; i < phi1.dimension(); ++i) {
        c += std::conj(phi1[i]) * v_phi2[i];
        r += std::conj(phi1[i]) * v_phi1[i];
    }
    out.correlator = c;
    out.rotated_spin = r;
    out.identity_residual = c - out.eigenvalue * r;
    return out;
}

}  // namespace clusterlab
