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

#ifndef CLUSTERLAB_HAMILTONIAN_H_
#define CLUSTERLAB_HAMILTONIAN_H_

#include <memory>

#include <Eigen/Dense>

#include "clusterlab/basis.h"
#include "clusterlab/lattice.h"
#include "clusterlab/sparse_operator.h"

namespace clusterlab {

/// Model energies in angular-frequency units with hbar = 1.
struct HubbardParams {
    double J = 1.0;      ///< tunneling
    double U = 0.0;      ///< onsite repulsion
    double Omega = 0.0;  ///< Rabi frequency of the drive

    bool operator==(const HubbardParams &) const = default;
};

/// Throws std::invalid_argument unless J > 0, U > 0 and Omega >= 0.
void validate(const HubbardParams &params);

/// Ising coupling 4 J^2 U / (Omega^2 - U^2). Throws std::domain_error at the
/// Omega = U pole.
double j_zz(const HubbardParams &params);

/// pi / |J_zz|.
double cluster_time(const HubbardParams &params);

/// Fermi-Hubbard model in the gauged frame, on every lattice bond:
///   J sum (d+_{j up} d_{k dn} + d+_{j dn} d_{k up} + h.c.)
///   + U sum n_{j up} n_{j dn} + (Omega/2) sum (n_{j up} - n_{j dn}).
/// Fermionic signs follow the site-major orbital ordering. On a restricted
/// sector basis the operator is projected onto that sector.
SparseHermitianOperator build_fermi_hubbard_gauged(
    const LatticeGeometry &geometry, const HubbardParams &params, std::shared_ptr<const FockBasis> basis);

/// Fermi-Hubbard model with spin-conserving tunneling and staggered drive:
///   -J sum (c+_{j s} c_{k s} + h.c.) + U sum n n
///   + (Omega/2) sum stagger(j) (n_{j up} - n_{j dn}).
SparseHermitianOperator build_fermi_hubbard_literal(
    const LatticeGeometry &geometry, const HubbardParams &params, std::shared_ptr<const FockBasis> basis);

/// Spin-1/2 superexchange model
///   J_zz sum_<jk> Sz_j Sz_k + Omega sum_j Sz_j
///   + (2 J^2 Omega / (Omega^2 - U^2)) sum_<jk> (Sz_j + Sz_k)
///   [+ (2 J^2 / U) sum_<jk> (S+_j S+_k + h.c.)  when include_flip_flop].
/// The per-bond field term equals D * 4 J^2 Omega / (Omega^2 - U^2) per site
/// on fully periodic lattices and counts actual bonds elsewhere.
SparseHermitianOperator build_superexchange(
    const LatticeGeometry &geometry,
    const HubbardParams &params,
    std::shared_ptr<const SpinBasis> basis,
    bool include_flip_flop);

/// J_zz sum_<jk> Sz_j Sz_k. Diagonal.
SparseHermitianOperator build_ising(
    const LatticeGeometry &geometry, double coupling, std::shared_ptr<const SpinBasis> basis);

/// Spin-1 model for doped Mott insulators: direct tunneling dressed by the
/// fermionic string over mid_sites, the J^2/(2U) pair-flip term, the
/// J^2/(Omega^2-U^2) density/Ising terms, and the bare drive
/// (Omega/2) sum Sigma^z.
SparseHermitianOperator build_spin1_hole(
    const LatticeGeometry &geometry, const HubbardParams &params, std::shared_ptr<const Spin1Basis> basis);

/// Only the J-linear (direct tunneling) part of build_spin1_hole.
SparseHermitianOperator build_spin1_direct_tunneling(
    const LatticeGeometry &geometry, const HubbardParams &params, std::shared_ptr<const Spin1Basis> basis);

/// Closed-form two-site superexchange matrix on {uu, ud, du, dd}:
///   2 J^2 [[1/(Omega-U), 0, 0, 1/U], [0,0,0,0], [0,0,0,0], [1/U, 0, 0, -1/(Omega+U)]].
Eigen::Matrix4d superexchange_2site_oracle(const HubbardParams &params);

}  // namespace clusterlab

#endif  // CLUSTERLAB_HAMILTONIAN_H_
