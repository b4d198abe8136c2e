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

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "clusterlab/observables.h"
#include "test_support.h"

namespace clusterlab {
namespace {

using std::numbers::pi;
using testing::dense_evolve;
using testing::dense_spin_string;
using testing::random_state;
using testing::to_eigen;

const HubbardParams kParams{1.0, 40.0, 50.0};

char axis_char(Axis a) {
    return a == Axis::kX ? 'x' : a == Axis::kY ? 'y' : 'z';
}

StateVector ideal_cluster_state(const Model &ising, const HubbardParams &p, double t) {
    return run_echo_ising(ising, p, ising.initial_state(), t);
}

TEST(CollectiveSpin, ProductStates) {
    auto basis = std::make_shared<SpinBasis>(7);
    EXPECT_NEAR(collective_spin(spin_left_state(basis), Axis::kX), -3.5, 1e-14);
    EXPECT_NEAR(collective_spin(spin_left_state(basis), Axis::kZ), 0.0, 1e-14);
    const StateVector up = product_state(basis, std::vector<std::optional<Spinor>>(7, Spinor{1.0, 0.0}));
    EXPECT_NEAR(collective_spin(up, Axis::kZ), 3.5, 1e-14);
}

TEST(CollectiveSpin, HolesContributeNothing) {
    auto basis = std::make_shared<FockBasis>(5, 4);
    const StateVector psi = spin_left_state(basis, {2});
    EXPECT_NEAR(collective_spin(psi, Axis::kX), -2.0, 1e-14);
    const std::size_t region[] = {2};
    EXPECT_EQ(collective_spin(psi, Axis::kX, region), 0.0);
}

TEST(CollectiveSpin, AdditiveOverDisjointRegions) {
    auto basis = std::make_shared<FockBasis>(4, 4);
    const StateVector psi = random_state(basis, 21);
    const std::size_t a[] = {0, 2};
    const std::size_t b[] = {1, 3};
    for (Axis axis : {Axis::kX, Axis::kY, Axis::kZ}) {
        EXPECT_NEAR(collective_spin(psi, axis, a) + collective_spin(psi, axis, b), collective_spin(psi, axis),
                    1e-14);
    }
}

TEST(CollectiveSpin, MatchesDenseOperators) {
    auto basis = std::make_shared<SpinBasis>(5);
    const StateVector psi = random_state(basis, 5);
    const Eigen::VectorXcd v = to_eigen(psi);
    for (Axis axis : {Axis::kX, Axis::kY, Axis::kZ}) {
        cplx expected = 0.0;
        for (std::size_t j = 0; j < 5; ++j) {
            expected += v.dot(dense_spin_string(5, {{j, axis_char(axis)}}) * v);
        }
        EXPECT_NEAR(collective_spin(psi, axis), expected.real(), 1e-13);
    }
}

TEST(SpinString, MatchesDenseOperators) {
    auto basis = std::make_shared<SpinBasis>(5);
    const StateVector psi = random_state(basis, 6);
    const Eigen::VectorXcd v = to_eigen(psi);
    const std::vector<SiteOp> ops = {{0, Axis::kY}, {2, Axis::kX}, {4, Axis::kZ}};
    const cplx expected = v.dot(dense_spin_string(5, {{0, 'y'}, {2, 'x'}, {4, 'z'}}) * v);
    EXPECT_LE(std::abs(spin_string_expectation(psi, ops) - expected), 1e-14);
    const std::vector<SiteOp> repeated = {{1, Axis::kX}, {1, Axis::kZ}};
    EXPECT_THROW(spin_string_expectation(psi, repeated), std::invalid_argument);
}

TEST(SpinString, DoublonsOnSupportProjectOut) {
    auto basis = std::make_shared<FockBasis>(2, 2);
    const StateVector psi = StateVector::basis_state(basis, *basis->find(Occupation{1, 1}));
    const std::vector<SiteOp> z0 = {{0, Axis::kZ}};
    EXPECT_EQ(spin_string_expectation(psi, z0), cplx(0.0));
}

TEST(SymmetrizedCorrelator, MatchesDense) {
    auto basis = std::make_shared<SpinBasis>(4);
    const StateVector psi = random_state(basis, 8);
    const Eigen::VectorXcd v = to_eigen(psi);
    for (auto [a, b] : {std::pair{Axis::kY, Axis::kZ}, std::pair{Axis::kX, Axis::kX}}) {
        Eigen::MatrixXcd sa = Eigen::MatrixXcd::Zero(16, 16);
        Eigen::MatrixXcd sb = Eigen::MatrixXcd::Zero(16, 16);
        for (std::size_t j = 0; j < 4; ++j) {
            sa += dense_spin_string(4, {{j, axis_char(a)}});
            sb += dense_spin_string(4, {{j, axis_char(b)}});
        }
        const cplx expected = v.dot((sa * sb + sb * sa) * v);
        EXPECT_NEAR(symmetrized_collective_correlator(psi, a, b), expected.real(), 1e-13);
    }
}

TEST(Stabilizer, SpecPrefactors) {
    const auto ring = LatticeGeometry::chain(6, Boundary::kPeriodic);
    const StabilizerSpec s = stabilizer_spec(ring, 2);
    EXPECT_EQ(s.center_axis, Axis::kX);
    EXPECT_EQ(s.prefactor, 8.0);
    EXPECT_EQ(s.neighbors.size(), 2u);
    const auto torus = LatticeGeometry::rectangle(3, 3, Boundary::kPeriodic, Boundary::kPeriodic);
    EXPECT_EQ(std::abs(stabilizer_spec(torus, 4).prefactor), 32.0);
    const auto open = LatticeGeometry::chain(5, Boundary::kOpen);
    EXPECT_EQ(std::abs(stabilizer_spec(open, 0).prefactor), 4.0);
    EXPECT_EQ(stabilizer_spec(open, 0).center_axis, Axis::kY);
}

TEST(Stabilizer, IdealClusterStateIsStabilized) {
    const std::vector<LatticeGeometry> geometries = {
        LatticeGeometry::chain(8, Boundary::kPeriodic),
        LatticeGeometry::chain(5, Boundary::kOpen),
        LatticeGeometry::rectangle(3, 3, Boundary::kPeriodic, Boundary::kPeriodic),
        LatticeGeometry::rectangle(2, 3, Boundary::kOpen, Boundary::kOpen),
    };
    for (const auto &g : geometries) {
        Model ising(ModelKind::kIsing, g);
        const StateVector psi = ideal_cluster_state(ising, kParams, cluster_time(kParams));
        const StateVector start = ising.initial_state();
        for (std::size_t j = 0; j < g.site_count(); ++j) {
            EXPECT_NEAR(stabilizer(psi, g, j), 1.0, 1e-10) << g.describe() << " site " << j;
            EXPECT_NEAR(stabilizer(start, g, j), 0.0, 1e-14);
        }
        if (g.site_count() >= 3) {
            EXPECT_NEAR(collective_spin(psi, Axis::kX), 0.0, 1e-10);
        }
    }
}

TEST(Stabilizer, BoundedByOne) {
    const auto g = LatticeGeometry::rectangle(3, 3, Boundary::kPeriodic, Boundary::kPeriodic);
    auto basis = std::make_shared<SpinBasis>(9);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const StateVector psi = random_state(basis, seed);
        for (std::size_t j = 0; j < 9; ++j) {
            EXPECT_LE(std::abs(stabilizer(psi, g, j)), 1.0 + 1e-14);
        }
    }
}

TEST(Fidelity, Properties) {
    auto basis = std::make_shared<SpinBasis>(5);
    const StateVector a = random_state(basis, 1);
    const StateVector b = random_state(basis, 2);
    EXPECT_NEAR(fidelity(a, a), 1.0, 1e-14);
    EXPECT_NEAR(fidelity(a, b), fidelity(b, a), 1e-15);
    std::vector<cplx> rotated(a.amplitudes().begin(), a.amplitudes().end());
    for (cplx &x : rotated) {
        x *= std::polar(1.0, 0.77);
    }
    EXPECT_NEAR(fidelity(StateVector(basis, rotated), b), fidelity(a, b), 1e-15);
    EXPECT_EQ(fidelity(StateVector::basis_state(basis, 0), StateVector::basis_state(basis, 1)), 0.0);
}

TEST(Fidelity, ComparesAcrossEmbeddedBases) {
    auto spins = std::make_shared<SpinBasis>(4);
    auto fock = std::make_shared<FockBasis>(4, 4);
    EXPECT_NEAR(fidelity(spin_left_state(spins), spin_left_state(fock)), 1.0, 1e-14);
    EXPECT_NEAR(fidelity(spin_left_state(fock), spin_left_state(spins)), 1.0, 1e-14);
    auto other = std::make_shared<FockBasis>(4, 3);
    EXPECT_THROW(fidelity(spin_left_state(spins), spin_left_state(other, {0})), std::invalid_argument);
}

TEST(HoleDensity, Examples) {
    auto full = std::make_shared<FockBasis>(4, 4);
    auto doped = std::make_shared<FockBasis>(4, 3);
    const StateVector half = spin_left_state(full);
    const StateVector hole = spin_left_state(doped, {0});
    for (std::size_t j = 0; j < 4; ++j) {
        EXPECT_EQ(hole_density(half, j), 0.0);
        EXPECT_NEAR(hole_density(hole, j), j == 0 ? 1.0 : 0.0, 1e-15);
    }
}

TEST(AnalyticSx, Examples1d) {
    const auto g = LatticeGeometry::chain(6, Boundary::kPeriodic);
    const double jzz = 0.25;
    auto at = [&](double theta) { return analytic_sx_1d(g, 2, theta / jzz, jzz); };
    EXPECT_NEAR(at(pi).x, 0.0, 1e-15);
    EXPECT_NEAR(at(pi).zxz, -4.0, 1e-15);
    EXPECT_NEAR(at(pi).y, 0.0, 1e-15);
    EXPECT_EQ(at(0.0).x, 1.0);
    EXPECT_EQ(at(0.0).zxz, 0.0);
    EXPECT_NEAR(at(pi / 2).x, 0.5, 1e-15);
    EXPECT_NEAR(at(pi / 2).zxz, -2.0, 1e-15);
    EXPECT_NEAR(at(pi / 2).y, 1.0, 1e-15);
    EXPECT_THROW(analytic_sx_1d(LatticeGeometry::chain(6, Boundary::kOpen), 0, 1.0, jzz), std::invalid_argument);
}

TEST(AnalyticSx, Examples2d) {
    const auto g = LatticeGeometry::rectangle(3, 3, Boundary::kPeriodic, Boundary::kPeriodic);
    const SxExpansion2d c = analytic_sx_2d(g, 4, pi, 1.0);
    EXPECT_NEAR(c.x, 0.0, 1e-15);
    EXPECT_NEAR(c.xzzzz, 16.0, 1e-14);
    EXPECT_NEAR(c.yz, 0.0, 1e-15);
    EXPECT_NEAR(c.xzz, 0.0, 1e-15);
    EXPECT_NEAR(c.yzzz, 0.0, 1e-15);
    const SxExpansion2d zero = analytic_sx_2d(g, 4, 0.0, 1.0);
    EXPECT_EQ(zero.x, 1.0);
    EXPECT_EQ(zero.xzzzz, 0.0);
    EXPECT_THROW(analytic_sx_2d(LatticeGeometry::chain(9, Boundary::kPeriodic), 4, 1.0, 1.0), std::invalid_argument);
}

/// <psi| exp(-i H t) S^x_j exp(i H t) |psi> from dense matrices.
double heisenberg_brute_force(const Eigen::MatrixXd &h, const StateVector &psi, std::size_t sites, std::size_t j,
                              double t) {
    const Eigen::VectorXcd phi = dense_evolve(h, to_eigen(psi), -t);
    return phi.dot(dense_spin_string(sites, {{j, 'x'}}) * phi).real();
}

TEST(AnalyticSx, MatchesHeisenbergBruteForce) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> time(0.0, 40.0);
    const double jzz = 0.177;
    const auto chain = LatticeGeometry::chain(6, Boundary::kPeriodic);
    const auto torus = LatticeGeometry::rectangle(3, 3, Boundary::kPeriodic, Boundary::kPeriodic);
    auto b6 = std::make_shared<SpinBasis>(6);
    auto b9 = std::make_shared<SpinBasis>(9);
    const Eigen::MatrixXd h6 = build_ising(chain, jzz, b6).to_dense();
    const Eigen::MatrixXd h9 = build_ising(torus, jzz, b9).to_dense();
    for (int k = 0; k < 10; ++k) {
        const double t = time(rng);
        const StateVector p6 = random_state(b6, 100 + k);
        const StateVector p9 = random_state(b9, 200 + k);
        EXPECT_NEAR(expansion_expectation(p6, chain, 3, analytic_sx_1d(chain, 3, t, jzz)),
                    heisenberg_brute_force(h6, p6, 6, 3, t), 1e-10);
        EXPECT_NEAR(expansion_expectation(p9, torus, 4, analytic_sx_2d(torus, 4, t, jzz)),
                    heisenberg_brute_force(h9, p9, 9, 4, t), 1e-10);
    }
}

TEST(ClusterEstimate, EqualsDirectStabilizerMean) {
    const std::vector<LatticeGeometry> geometries = {
        LatticeGeometry::chain(6, Boundary::kPeriodic),
        LatticeGeometry::chain(5, Boundary::kOpen),
        LatticeGeometry::rectangle(2, 3, Boundary::kOpen, Boundary::kOpen),
        LatticeGeometry::rectangle(3, 3, Boundary::kPeriodic, Boundary::kPeriodic),
    };
    for (const auto &g : geometries) {
        Model ising(ModelKind::kIsing, g);
        const double tc = cluster_time(kParams);
        std::vector<std::size_t> all(g.site_count());
        std::iota(all.begin(), all.end(), 0);
        for (double t : {0.0, 0.4 * tc, tc, 1.5 * tc}) {
            const StateVector psi = ideal_cluster_state(ising, kParams, t);
            double direct = 0.0;
            for (std::size_t j : all) {
                direct += stabilizer(psi, g, j);
            }
            direct /= static_cast<double>(all.size());
            const ClusterEstimate est = collective_cluster_estimate(ising, kParams, ising.initial_state(), all, t);
            EXPECT_NEAR(est.estimate, direct, 1e-10) << g.describe() << " t=" << t;
        }
    }
}

TEST(Otoc, InitialAndTrivialRotation) {
    Model se(ModelKind::kSuperexchange, LatticeGeometry::chain(6, Boundary::kPeriodic));
    const StateVector psi0 = se.initial_state();
    const OtocResult at_zero = otoc(se, kParams, psi0, pi / 3, 0.0);
    EXPECT_NEAR(at_zero.correlator.real(), 9.0, 1e-10);
    EXPECT_NEAR(at_zero.correlator.imag(), 0.0, 1e-10);
    EXPECT_NEAR(at_zero.eigenvalue, -3.0, 1e-14);
    // Without the rotation the ideal Ising schedule is the identity.
    Model ising(ModelKind::kIsing, LatticeGeometry::chain(6, Boundary::kPeriodic));
    const OtocResult no_rotation = otoc(ising, kParams, ising.initial_state(), 0.0, 13.0);
    EXPECT_NEAR(no_rotation.correlator.real(), 9.0, 1e-9);
}

TEST(Otoc, EigenstateIdentity) {
    Model se(ModelKind::kSuperexchange, LatticeGeometry::chain(6, Boundary::kPeriodic));
    const StateVector psi0 = se.initial_state();
    const double tc = cluster_time(kParams);
    for (double theta : {pi / 7, 0.9}) {
        for (double t : {0.3 * tc, 1.7 * tc}) {
            const OtocResult r = otoc(se, kParams, psi0, theta, t);
            EXPECT_LE(std::abs(r.correlator + 3.0 * r.rotated_spin), 1e-9);
            EXPECT_LE(std::abs(r.identity_residual), 1e-9);
        }
    }
}

TEST(Otoc, RejectsNonEigenstate) {
    Model se(ModelKind::kSuperexchange, LatticeGeometry::chain(4, Boundary::kPeriodic));
    EXPECT_THROW(otoc(se, kParams, random_state(se.basis(), 3), 0.5, 1.0), std::invalid_argument);
}

}  // namespace
}  // namespace clusterlab
