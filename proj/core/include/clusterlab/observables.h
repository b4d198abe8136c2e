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

#ifndef CLUSTERLAB_OBSERVABLES_H_
#define CLUSTERLAB_OBSERVABLES_H_

#include <span>
#include <string>
#include <vector>

#include "clusterlab/lattice.h"
#include "clusterlab/model.h"
#include "clusterlab/propagate.h"
#include "clusterlab/protocol.h"
#include "clusterlab/state.h"

namespace clusterlab {

/// Spin-1/2 operator S^axis on one site.
struct SiteOp {
    std::size_t site;
    Axis axis;
};

/// <psi| prod S^axis_site |psi> for operators on distinct sites.
/// Configurations with a hole or doublon on any site of the support
/// contribute zero.
cplx spin_string_expectation(const StateVector &psi, std::span<const SiteOp> ops);

/// sum_{j in region} <S^axis_j>. An empty region means every site.
double collective_spin(const StateVector &psi, Axis axis, std::span<const std::size_t> region = {});

/// S^axis psi summed over `region` (every site when empty), with the same
/// hole and doublon convention.
std::vector<cplx> apply_collective_spin(const StateVector &psi, Axis axis, std::span<const std::size_t> region = {});

/// <S^a S^b + h.c.> for collective operators over all sites.
double symmetrized_collective_correlator(const StateVector &psi, Axis a, Axis b);

/// Stabilizer of the state obtained from |<-...<-> by exp(-i theta
/// sum_<jk> S^z_j S^z_k) at theta = +pi, written as
///   sign * 2^(n+1) * S^center_j prod_{k in N(j)} S^z_k
/// with n = |N(j)|. Even n: center x, sign (-1)^(n/2+1). Odd n: center y,
/// sign (-1)^((n+1)/2). Bulk sites of periodic 1D lattices give
/// +8 S^x S^z S^z.
struct StabilizerSpec {
    std::size_t center = 0;
    std::vector<std::size_t> neighbors;
    Axis center_axis = Axis::kX;
    double prefactor = 0.0;  ///< sign * 2^(n+1)
};

StabilizerSpec stabilizer_spec(const LatticeGeometry &geometry, std::size_t site);

/// Real stabilizer expectation in [-1, 1].
double stabilizer(const StateVector &psi, const StabilizerSpec &spec);
double stabilizer(const StateVector &psi, const LatticeGeometry &geometry, std::size_t site);

/// |<psi|phi>|^2. States on different bases are compared through their
/// occupations; one basis must embed into the other.
double fidelity(const StateVector &psi, const StateVector &phi);

/// Probability that `site` is empty.
double hole_density(const StateVector &psi, std::size_t site);

struct ClusterEstimate {
    double estimate = 0.0;       ///< mean stabilizer estimate over the region
    double collective_sx = 0.0;  ///< <S^x_R> after reversal
    RunReport report;
};

/// Echo forward for t, quench, echo back for the cluster time, then
/// measure S^x_R. The mean stabilizer estimate over R is -2 <S^x_R> / |R|
/// in the stabilizer convention above, for any coordination number.
ClusterEstimate collective_cluster_estimate(
    const Model &model,
    const HubbardParams &params,
    const StateVector &psi0,
    std::span<const std::size_t> region,
    double t,
    const PropagationOptions &options = {});

struct OtocResult {
    cplx correlator;      ///< <W(t)^dag V^dag W(t) V>
    cplx rotated_spin;    ///< <W(t)^dag V W(t)>
    double eigenvalue;    ///< lambda with V psi0 = lambda psi0
    /// correlator - eigenvalue * rotated_spin; vanishes for an eigenstate.
    cplx identity_residual;
    RunReport report;
};

/// OTOC with V = S^x and W = exp(-i theta S^x). W(t) = U(t)^dag W U(t) is
/// realized as an echo forward, the rotation, a quench and an echo back.
/// Throws std::invalid_argument unless Var(V) < 1e-10 on psi0.
OtocResult otoc(
    const Model &model,
    const HubbardParams &params,
    const StateVector &psi0,
    double theta,
    double t,
    const PropagationOptions &options = {});

/// Coefficients of exp(-i H_zz t) S^x_j exp(+i H_zz t) for a site with two
/// neighbors, theta = J_zz t:
///   x S^x_j + zxz S^z_l S^x_j S^z_r + y S^y_j (S^z_l + S^z_r).
struct SxExpansion1d {
    double x;
    double zxz;
    double y;
};

/// Coefficients for a site with four neighbors:
///   x S^x_j + xzzzz S^x_j prod_k S^z_k + yz S^y_j sum_k S^z_k
///   + xzz S^x_j sum_{k<k'} S^z_k S^z_k' + yzzz S^y_j sum_{k<k'<k''} S^z S^z S^z.
struct SxExpansion2d {
    double x;
    double xzzzz;
    double yz;
    double xzz;
    double yzzz;
};

/// Throws std::invalid_argument unless the lattice is 1D and the site has
/// two distinct neighbors.
SxExpansion1d analytic_sx_1d(const LatticeGeometry &geometry, std::size_t site, double t, double jzz);
/// Throws std::invalid_argument unless the lattice is 2D and the site has
/// four distinct neighbors.
SxExpansion2d analytic_sx_2d(const LatticeGeometry &geometry, std::size_t site, double t, double jzz);

/// <psi| expansion |psi> with the operator strings evaluated directly.
double expansion_expectation(
    const StateVector &psi, const LatticeGeometry &geometry, std::size_t site, const SxExpansion1d &c);
double expansion_expectation(
    const StateVector &psi, const LatticeGeometry &geometry, std::size_t site, const SxExpansion2d &c);

}  // namespace clusterlab

#endif  // CLUSTERLAB_OBSERVABLES_H_
