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

#include "clusterlab/hamiltonian.h"

#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace clusterlab {

namespace {

void check_basis_sites(const LatticeGeometry &geometry, const Basis &basis) {
    if (geometry.site_count() != basis.site_count()) {
        throw std::invalid_argument(
            "basis has " + std::to_string(basis.site_count()) + " sites but the lattice has " +
            std::to_string(geometry.site_count()));
    }
}

// Fermionic hop processes of one bond in the gauged frame: (to, to_spin, from, from_spin).
struct Hop {
    std::size_t to;
    Spin to_spin;
    std::size_t from;
    Spin from_spin;
};

double diagonal_fock_energy(const Occupation &occ, const HubbardParams &p) {
    int doublons = std::popcount(occ.up & occ.down);
    int mz2 = std::popcount(occ.up) - std::popcount(occ.down);
    return p.U * doublons + 0.5 * p.Omega * mz2;
}

using Local3 = Eigen::Matrix3d;
using Local9 = Eigen::Matrix<double, 9, 9>;

// Spin-1 operators in the (+1, 0, -1) ordering used by Spin1Basis digits.
Local3 sigma_z() {
    Local3 m = Local3::Zero();
    m(0, 0) = 1.0;
    m(2, 2) = -1.0;
    return m;
}

Local3 sigma_plus() {
    Local3 m = Local3::Zero();
    m(0, 1) = std::numbers::sqrt2;
    m(1, 2) = std::numbers::sqrt2;
    return m;
}

Local9 kron(const Local3 &a, const Local3 &b) {
    Local9 out;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            out.block<3, 3>(3 * i, 3 * j) = a(i, j) * b;
        }
    }
    return out;
}

struct Spin1BondTerms {
    Local9 direct;  // dressed by the fermionic string
    Local9 other;   // superexchange-derived terms
};

Spin1BondTerms spin1_bond_terms(const HubbardParams &p) {
    const Local3 z = sigma_z();
    const Local3 sp = sigma_plus();
    const Local3 sm = sp.transpose();
    const Local3 id = Local3::Identity();

    Local9 t = 0.5 * p.J * (kron(z * sp, sp * z) + kron(z * sm, sm * z));
    Spin1BondTerms terms;
    terms.direct = t + t.transpose();

    Local9 pair = (p.J * p.J / (2.0 * p.U)) * kron(sp * sp, sp * sp);
    const double g = p.J * p.J / (p.Omega * p.Omega - p.U * p.U);
    const Local3 z2 = z * z;
    terms.other = pair + pair.transpose() +
                  g * (p.U * kron(z, z) + p.U * kron(z2, z2) + p.Omega * (kron(z2, z) + kron(z, z2)));
    (void)id;
    return terms;
}

template <typename Emit>
void for_each_spin1_transition(
    const Local9 &m, std::size_t dj, std::size_t dk, Emit &&emit) {
    const int in = static_cast<int>(3 * dj + dk);
    for (int out = 0; out < 9; ++out) {
        double v = m(out, in);
        if (v != 0.0) {
            emit(static_cast<std::size_t>(out / 3), static_cast<std::size_t>(out % 3), v);
        }
    }
}

SparseHermitianOperator assemble_spin1(
    const LatticeGeometry &geometry,
    const HubbardParams &params,
    std::shared_ptr<const Spin1Basis> basis,
    bool include_superexchange) {
    check_basis_sites(geometry, *basis);
    validate(params);
    if (include_superexchange) {
        (void)j_zz(params);  // divergence guard
    }
    const Spin1BondTerms terms = spin1_bond_terms(params);
    const std::size_t sites = geometry.site_count();
    std::vector<std::uint64_t> powers(sites + 1, 1);
    for (std::size_t j = 1; j <= sites; ++j) {
        powers[j] = powers[j - 1] * 3;
    }
    struct BondInfo {
        std::size_t j;
        std::size_t k;
        std::uint64_t mid_mask;
    };
    std::vector<BondInfo> bonds;
    for (const Bond &b : geometry.bonds()) {
        std::uint64_t mask = 0;
        for (std::size_t p : geometry.mid_sites(b.first, b.second)) {
            mask |= 1ull << p;
        }
        bonds.push_back({b.first, b.second, mask});
    }

    OperatorAssembler assembler(basis);
    for (std::size_t r = 0; r < basis->dimension(); ++r) {
        assembler.begin_row(r);
        const Occupation &occ = basis->occupation(r);
        const std::uint64_t code = basis->code(r);
        const std::uint64_t particles = occ.up | occ.down;
        if (include_superexchange) {
            int mz = std::popcount(occ.up) - std::popcount(occ.down);
            assembler.add(r, 0.5 * params.Omega * mz);
        }
        for (const BondInfo &b : bonds) {
            const std::size_t dj = (code / powers[b.j]) % 3;
            const std::size_t dk = (code / powers[b.k]) % 3;
            auto emit_to = [&](double scale) {
                return [&, scale](std::size_t oj, std::size_t ok, double v) {
                    std::uint64_t next = code - dj * powers[b.j] - dk * powers[b.k] + oj * powers[b.j] +
                                         ok * powers[b.k];
                    auto idx = basis->find_code(next);
                    if (idx) {
                        assembler.add(*idx, scale * v);
                    }
                };
            };
            const double string_sign = (std::popcount(particles & b.mid_mask) % 2 == 0) ? 1.0 : -1.0;
            for_each_spin1_transition(terms.direct, dj, dk, emit_to(string_sign));
            if (include_superexchange) {
                for_each_spin1_transition(terms.other, dj, dk, emit_to(1.0));
            }
        }
    }
    return std::move(assembler).finish();
}

}  // namespace

void validate(const HubbardParams &params) {
    if (!(params.J > 0.0) || !std::isfinite(params.J)) {
        throw std::invalid_argument("tunneling J must be positive and finite");
    }
    if (!(params.U > 0.0) || !std::isfinite(params.U)) {
        throw std::invalid_argument("onsite repulsion U must be positive and finite");
    }
    if (!(params.Omega >= 0.0) || !std::isfinite(params.Omega)) {
        throw std::invalid_argument("Rabi frequency Omega must be non-negative and finite");
    }
}

double j_zz(const HubbardParams &params) {
    const double denom = params.Omega * params.Omega - params.U * params.U;
    if (denom == 0.0) {
        throw std::domain_error("J_zz diverges at Omega = U");
    }
    return 4.0 * params.J * params.J * params.U / denom;
}

double cluster_time(const HubbardParams &params) {
    return std::numbers::pi / std::abs(j_zz(params));
}

SparseHermitianOperator build_fermi_hubbard_gauged(
    const LatticeGeometry &geometry, const HubbardParams &params, std::shared_ptr<const FockBasis> basis) {
    check_basis_sites(geometry, *basis);
    validate(params);
    std::vector<Hop> hops;
    for (const Bond &b : geometry.bonds()) {
        // d+_{j up} d_{k dn} + d+_{j dn} d_{k up} and their conjugates.
        hops.push_back({b.first, Spin::kUp, b.second, Spin::kDown});
        hops.push_back({b.first, Spin::kDown, b.second, Spin::kUp});
        hops.push_back({b.second, Spin::kDown, b.first, Spin::kUp});
        hops.push_back({b.second, Spin::kUp, b.first, Spin::kDown});
    }
    OperatorAssembler assembler(basis);
    for (std::size_t r = 0; r < basis->dimension(); ++r) {
        assembler.begin_row(r);
        assembler.add(r, diagonal_fock_energy(basis->occupation(r), params));
        const std::uint64_t s = basis->state(r);
        for (const Hop &h : hops) {
            auto next = apply_hop(s, h.to, h.to_spin, h.from, h.from_spin);
            if (!next) {
                continue;
            }
            if (auto c = basis->find_state(next->first)) {
                assembler.add(*c, params.J * next->second);
            }
        }
    }
    return std::move(assembler).finish();
}

SparseHermitianOperator build_fermi_hubbard_literal(
    const LatticeGeometry &geometry, const HubbardParams &params, std::shared_ptr<const FockBasis> basis) {
    check_basis_sites(geometry, *basis);
    validate(params);
    std::vector<int> stagger(geometry.site_count());
    for (std::size_t j = 0; j < geometry.site_count(); ++j) {
        stagger[j] = geometry.stagger_sign(j);
    }
    std::vector<Hop> hops;
    for (const Bond &b : geometry.bonds()) {
        for (Spin s : {Spin::kUp, Spin::kDown}) {
            hops.push_back({b.first, s, b.second, s});
            hops.push_back({b.second, s, b.first, s});
        }
    }
    OperatorAssembler assembler(basis);
    for (std::size_t r = 0; r < basis->dimension(); ++r) {
        assembler.begin_row(r);
        const Occupation &occ = basis->occupation(r);
        double diag = params.U * std::popcount(occ.up & occ.down);
        for (std::size_t j = 0; j < geometry.site_count(); ++j) {
            int mz2 = static_cast<int>((occ.up >> j) & 1u) - static_cast<int>((occ.down >> j) & 1u);
            diag += 0.5 * params.Omega * stagger[j] * mz2;
        }
        assembler.add(r, diag);
        const std::uint64_t s = basis->state(r);
        for (const Hop &h : hops) {
            auto next = apply_hop(s, h.to, h.to_spin, h.from, h.from_spin);
            if (!next) {
                continue;
            }
            if (auto c = basis->find_state(next->first)) {
                assembler.add(*c, -params.J * next->second);
            }
        }
    }
    return std::move(assembler).finish();
}

SparseHermitianOperator build_superexchange(
    const LatticeGeometry &geometry,
    const HubbardParams &params,
    std::shared_ptr<const SpinBasis> basis,
    bool include_flip_flop) {
    check_basis_sites(geometry, *basis);
    validate(params);
    const double jzz = j_zz(params);
    const double denom = params.Omega * params.Omega - params.U * params.U;
    const double bond_field = 2.0 * params.J * params.J * params.Omega / denom;
    const double flip_flop = 2.0 * params.J * params.J / params.U;

    // Field per site: bare drive plus one superexchange share per bond.
    std::vector<double> field(geometry.site_count(), params.Omega);
    for (const Bond &b : geometry.bonds()) {
        field[b.first] += bond_field;
        field[b.second] += bond_field;
    }

    OperatorAssembler assembler(basis);
    for (std::size_t r = 0; r < basis->dimension(); ++r) {
        assembler.begin_row(r);
        const std::uint64_t up = r;
        double diag = 0.0;
        for (std::size_t j = 0; j < geometry.site_count(); ++j) {
            diag += field[j] * (((up >> j) & 1u) ? 0.5 : -0.5);
        }
        for (const Bond &b : geometry.bonds()) {
            bool aligned = (((up >> b.first) ^ (up >> b.second)) & 1u) == 0;
            diag += jzz * (aligned ? 0.25 : -0.25);
            if (include_flip_flop && aligned) {
                assembler.add(r ^ ((1ull << b.first) | (1ull << b.second)), flip_flop);
            }
        }
        assembler.add(r, diag);
    }
    return std::move(assembler).finish();
}

SparseHermitianOperator build_ising(
    const LatticeGeometry &geometry, double coupling, std::shared_ptr<const SpinBasis> basis) {
    check_basis_sites(geometry, *basis);
    OperatorAssembler assembler(basis);
    for (std::size_t r = 0; r < basis->dimension(); ++r) {
        assembler.begin_row(r);
        int sum = 0;
        for (const Bond &b : geometry.bonds()) {
            sum += ((((r >> b.first) ^ (r >> b.second)) & 1u) == 0) ? 1 : -1;
        }
        assembler.add(r, 0.25 * coupling * sum);
    }
    return std::move(assembler).finish();
}

SparseHermitianOperator build_spin1_hole(
    const LatticeGeometry &geometry, const HubbardParams &params, std::shared_ptr<const Spin1Basis> basis) {
    return assemble_spin1(geometry, params, std::move(basis), true);
}

SparseHermitianOperator build_spin1_direct_tunneling(
    const LatticeGeometry &geometry, const HubbardParams &params, std::shared_ptr<const Spin1Basis> basis) {
    return assemble_spin1(geometry, params, std::move(basis), false);
}

Eigen::Matrix4d superexchange_2site_oracle(const HubbardParams &params) {
    validate(params);
    if (params.Omega == params.U) {
        throw std::domain_error("two-site superexchange diverges at Omega = U");
    }
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    const double s = 2.0 * params.J * params.J;
    m(0, 0) = s / (params.Omega - params.U);
    m(0, 3) = s / params.U;
    m(3, 0) = s / params.U;
    m(3, 3) = -s / (params.Omega + params.U);
    return m;
}

}  // namespace clusterlab
