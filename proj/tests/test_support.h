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

// Independent dense oracles shared by the unit and acceptance tests. They
// use only Eigen and the basis occupations, never the sparse propagator.

#ifndef CLUSTERLAB_TESTS_TEST_SUPPORT_H_
#define CLUSTERLAB_TESTS_TEST_SUPPORT_H_

#include <bit>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "clusterlab/basis.h"
#include "clusterlab/hamiltonian.h"
#include "clusterlab/sparse_operator.h"
#include "clusterlab/state.h"

namespace clusterlab::testing {

/// exp(-i H t) psi through a dense eigendecomposition.
inline Eigen::VectorXcd dense_evolve(const Eigen::MatrixXd &h, const Eigen::VectorXcd &psi, double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
    const Eigen::MatrixXcd v = eig.eigenvectors().cast<cplx>();
    Eigen::VectorXcd c = v.adjoint() * psi;
    for (Eigen::Index k = 0; k < c.size(); ++k) {
        c(k) *= std::polar(1.0, -eig.eigenvalues()(k) * t);
    }
    return v * c;
}

inline Eigen::VectorXcd to_eigen(const StateVector &s) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(s.dimension()));
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        v(static_cast<Eigen::Index>(i)) = s[i];
    }
    return v;
}

inline StateVector from_eigen(std::shared_ptr<const Basis> basis, const Eigen::VectorXcd &v) {
    return StateVector(std::move(basis), std::vector<cplx>(v.data(), v.data() + v.size()));
}

inline StateVector random_state(std::shared_ptr<const Basis> basis, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<cplx> a(basis->dimension());
    for (cplx &x : a) {
        x = cplx(g(rng), g(rng));
    }
    StateVector s(std::move(basis), std::move(a));
    s.normalize();
    return s;
}

/// Dense Pauli-string operator on a spin-1/2 basis: prod over `axes` of
/// S^axis on the listed sites, built as Kronecker products of 2x2 blocks.
inline Eigen::MatrixXcd dense_spin_string(std::size_t sites, const std::vector<std::pair<std::size_t, char>> &ops) {
    const Eigen::Index dim = Eigen::Index{1} << sites;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto &[site, axis] : ops) {
        Eigen::MatrixXcd single = Eigen::MatrixXcd::Zero(dim, dim);
        for (Eigen::Index s = 0; s < dim; ++s) {
            const bool up = (s >> site) & 1;
            const Eigen::Index flipped = s ^ (Eigen::Index{1} << site);
            switch (axis) {
                case 'x':
                    single(flipped, s) = 0.5;
                    break;
                case 'y':
                    single(flipped, s) = up ? cplx(0, 0.5) : cplx(0, -0.5);
                    break;
                default:
                    single(s, s) = up ? 0.5 : -0.5;
            }
        }
        m = single * m;
    }
    return m;
}

/// Second-order downfolding of the two-site gauged Fermi-Hubbard model onto
/// the singly occupied manifold, in the order {uu, ud, du, dd}:
///   H_eff[i][j] = sum_k H[i][k] H[k][j] / ((E_i + E_j)/2 - E_k).
inline Eigen::Matrix4d downfold_two_site(const HubbardParams &p) {
    auto fock = std::make_shared<FockBasis>(2, 2, FockSector::kAll);
    const Eigen::MatrixXd h =
        build_fermi_hubbard_gauged(LatticeGeometry::chain(2, Boundary::kOpen), p, fock).to_dense();
    // Spin order uu, ud, du, dd as occupations (bit j = site j).
    const Occupation order[4] = {{3, 0}, {1, 2}, {2, 1}, {0, 3}};
    int idx[4];
    for (int a = 0; a < 4; ++a) {
        idx[a] = static_cast<int>(*fock->find(order[a]));
    }
    std::vector<int> doublons;
    for (std::size_t k = 0; k < fock->dimension(); ++k) {
        const Occupation &o = fock->occupation(k);
        if (o.up & o.down) {
            doublons.push_back(static_cast<int>(k));
        }
    }
    Eigen::Matrix4d out = Eigen::Matrix4d::Zero();
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            const double e = 0.5 * (h(idx[a], idx[a]) + h(idx[b], idx[b]));
            for (int k : doublons) {
                out(a, b) += h(idx[a], k) * h(k, idx[b]) / (e - h(k, k));
            }
        }
    }
    return out;
}

/// Largest entry of a - b - c I after removing the best identity shift c.
inline double identity_offset_residual(const Eigen::MatrixXd &a, const Eigen::MatrixXd &b) {
    const Eigen::MatrixXd d = a - b;
    const double shift = d.diagonal().mean();
    return (d - shift * Eigen::MatrixXd::Identity(d.rows(), d.cols())).cwiseAbs().maxCoeff();
}

/// Spin-1 model on the hole-free sector against the spin-1/2 superexchange
/// model with flip-flop terms, compared up to an identity shift.
inline double spin1_hole_free_residual(const LatticeGeometry &g, const HubbardParams &p) {
    const std::size_t l = g.site_count();
    auto spin1 = std::make_shared<Spin1Basis>(l, 0);
    auto spins = std::make_shared<SpinBasis>(l);
    const Eigen::MatrixXd a = build_spin1_hole(g, p, spin1).to_dense();
    const Eigen::MatrixXd s = build_superexchange(g, p, spins, true).to_dense();
    const auto map = embedding(*spin1, *spins);
    Eigen::MatrixXd b(a.rows(), a.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            b(i, j) = s(static_cast<Eigen::Index>(map[static_cast<std::size_t>(i)]),
                        static_cast<Eigen::Index>(map[static_cast<std::size_t>(j)]));
        }
    }
    return identity_offset_residual(a, b);
}

struct StringCheck {
    std::size_t mismatches = 0;
    std::size_t hops = 0;
    std::size_t hops_across_string = 0;
};

/// Direct tunneling of the spin-1 model against the gauged Fermi-Hubbard
/// hopping on the no-doublon sector with `particles` fermions. The frames
/// differ by the diagonal sublattice gauge (-1)^(particles on odd sites),
/// which is applied before the entrywise comparison.
inline StringCheck spin1_string_check(const LatticeGeometry &g, std::size_t particles, const HubbardParams &p) {
    const std::size_t l = g.site_count();
    auto fock = std::make_shared<FockBasis>(l, particles, FockSector::kNoDoublons);
    auto spin1 = std::make_shared<Spin1Basis>(l, l - particles);
    const auto fh = build_fermi_hubbard_gauged(g, p, fock);
    const auto direct = build_spin1_direct_tunneling(g, p, spin1);
    const auto map = spin1_embedding(*fock, *spin1);
    std::uint64_t odd_mask = 0;
    for (std::size_t s = 0; s < l; ++s) {
        if (g.stagger_sign(s) < 0) {
            odd_mask |= std::uint64_t{1} << s;
        }
    }
    auto gauge = [&](std::size_t i) {
        const Occupation &o = fock->occupation(i);
        return std::popcount((o.up | o.down) & odd_mask) % 2 ? -1.0 : 1.0;
    };
    StringCheck out;
    if (map.size() != spin1->dimension()) {
        out.mismatches = 1;
        return out;
    }
    for (std::size_t a = 0; a < fock->dimension(); ++a) {
        for (std::size_t b = 0; b < fock->dimension(); ++b) {
            if (a == b) {
                continue;
            }
            const double expected = gauge(a) * gauge(b) * fh.element(a, b);
            if (std::abs(direct.element(map[a], map[b]) - expected) > 1e-14 * p.J) {
                ++out.mismatches;
            }
            if (expected != 0.0) {
                ++out.hops;
                const std::uint64_t moved = (fock->occupation(a).up | fock->occupation(a).down) ^
                                            (fock->occupation(b).up | fock->occupation(b).down);
                const auto lo = static_cast<std::size_t>(std::countr_zero(moved));
                const auto hi = static_cast<std::size_t>(63 - std::countl_zero(moved));
                out.hops_across_string += !g.mid_sites(lo, hi).empty();
            }
        }
    }
    return out;
}

}  // namespace clusterlab::testing

#endif  // CLUSTERLAB_TESTS_TEST_SUPPORT_H_
