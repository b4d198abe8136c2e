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

#include <gtest/gtest.h>

#include "clusterlab/observables.h"
#include "clusterlab/protocol.h"
#include "test_support.h"

namespace clusterlab {
namespace {

using std::numbers::pi;
using testing::random_state;
using testing::to_eigen;

StateVector all_up(std::shared_ptr<const Basis> basis) {
    return product_state(basis, std::vector<std::optional<Spinor>>(basis->site_count(), Spinor{1.0, 0.0}));
}

TEST(GlobalPulse, FullTurnIsSignPerSite) {
    for (std::size_t l : {3u, 4u}) {
        auto basis = std::make_shared<SpinBasis>(l);
        const StateVector psi = random_state(basis, l);
        for (Axis axis : {Axis::kX, Axis::kY, Axis::kZ}) {
            const StateVector out = global_pulse(psi, axis, 2 * pi);
            const double sign = l % 2 ? -1.0 : 1.0;
            EXPECT_LE((to_eigen(out) - sign * to_eigen(psi)).cwiseAbs().maxCoeff(), 1e-14);
        }
    }
}

TEST(GlobalPulse, PiPulseFlipsAllSpins) {
    auto basis = std::make_shared<SpinBasis>(3);
    const StateVector out = global_pulse(all_up(basis), Axis::kX, pi);
    EXPECT_NEAR(std::abs(out[0]), 1.0, 1e-15);
    EXPECT_NEAR(collective_spin(out, Axis::kZ), -1.5, 1e-15);
}

TEST(GlobalPulse, SpinLeftIsPiPulseEigenstate) {
    auto basis = std::make_shared<SpinBasis>(5);
    const StateVector psi = spin_left_state(basis);
    EXPECT_NEAR(fidelity(global_pulse(psi, Axis::kX, pi), psi), 1.0, 1e-14);
}

TEST(GlobalPulse, LeavesHolesAndDoublonsAlone) {
    auto basis = std::make_shared<FockBasis>(3, 3);
    const std::size_t i = *basis->find(Occupation{0b011, 0b001});  // doublon, up, hole
    const StateVector out = global_pulse(StateVector::basis_state(basis, i), Axis::kX, pi);
    const std::size_t j = *basis->find(Occupation{0b001, 0b011});
    EXPECT_NEAR(std::abs(out[j]), 1.0, 1e-15);
}

TEST(GlobalPulse, ZRotationIsPhasesOnly) {
    auto basis = std::make_shared<SpinBasis>(4);
    const StateVector psi = random_state(basis, 9);
    const StateVector out = global_pulse(psi, Axis::kZ, 0.7);
    for (std::size_t i = 0; i < psi.dimension(); ++i) {
        EXPECT_NEAR(std::abs(out[i]), std::abs(psi[i]), 1e-15);
    }
}

TEST(Quench, Examples) {
    const HubbardParams p{1.0, 115.0, 140.0};
    const HubbardParams q = quench_omega(p);
    EXPECT_NEAR(q.Omega, std::sqrt(6850.0), 1e-12);
    EXPECT_NEAR(j_zz(q), -j_zz(p), 1e-15 * j_zz(p));
    EXPECT_NEAR(quench_omega(q).Omega, p.Omega, 1e-12);
    EXPECT_THROW(quench_omega({1.0, 40.0, 40.0 * std::numbers::sqrt2}), std::domain_error);
    EXPECT_THROW(quench_omega({1.0, 40.0, 60.0}), std::domain_error);
}

TEST(Quench, FlipsCouplingAcrossGrid) {
    for (int a = 0; a < 10; ++a) {
        for (int b = 0; b < 10; ++b) {
            const double u = 20.0 + 20.0 * a;
            const double omega = u * (1.15 + 0.025 * b);
            const HubbardParams p{1.0, u, omega};
            const double before = j_zz(p);
            EXPECT_LE(std::abs(j_zz(quench_omega(p)) + before), 1e-15 * std::abs(before));
        }
    }
}

TEST(Schedule, ValidatesSegments) {
    ProtocolSchedule s{{1.0, 40.0, 50.0}, {}};
    s.evolve(1.0).pulse(Axis::kX, pi).quench();
    EXPECT_NO_THROW(s.validate());
    ProtocolSchedule bad{{1.0, 40.0, 50.0}, {}};
    bad.evolve(-1.0);
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    ProtocolSchedule twice{{1.0, 40.0, 70.0}, {}};
    twice.quench();
    EXPECT_THROW(twice.validate(), std::domain_error);
}

TEST(Echo, ZzOnlySuperexchangeMatchesIdealIsing) {
    const HubbardParams p{1.0, 40.0, 50.0};
    const auto g = LatticeGeometry::chain(8, Boundary::kPeriodic);
    Model se(ModelKind::kSuperexchangeZzOnly, g);
    auto ising = build_ising(g, j_zz(p), std::static_pointer_cast<const SpinBasis>(se.basis()));
    const StateVector psi0 = se.initial_state();
    for (double t : {0.0, 3.1, cluster_time(p), 2 * cluster_time(p)}) {
        const StateVector echo = run_echo_ising(se, p, psi0, t);
        const StateVector ideal = propagate(ising, psi0, t);
        EXPECT_GE(fidelity(echo, ideal), 1 - 1e-10) << t;
        EXPECT_NEAR(echo.norm(), 1.0, 1e-10);
    }
}

TEST(Echo, RandomStateIsPulseTimesIsing) {
    const HubbardParams p{1.0, 56.0, 66.0};
    const auto g = LatticeGeometry::rectangle(3, 2, Boundary::kOpen, Boundary::kPeriodic);
    Model se(ModelKind::kSuperexchangeZzOnly, g);
    const StateVector psi0 = random_state(se.basis(), 12);
    const double t = 7.5;
    const StateVector expected =
        global_pulse(propagate(build_ising(g, j_zz(p), std::static_pointer_cast<const SpinBasis>(se.basis())), psi0, t), Axis::kX, pi);
    EXPECT_GE(fidelity(run_echo_ising(se, p, psi0, t), expected), 1 - 1e-10);
}

TEST(TimeReversal, IdealIsingReturnsInitialState) {
    const HubbardParams p{1.0, 40.0, 50.0};
    for (const auto &g : {LatticeGeometry::chain(8, Boundary::kPeriodic),
                          LatticeGeometry::rectangle(3, 3, Boundary::kPeriodic, Boundary::kPeriodic)}) {
        Model ising(ModelKind::kIsing, g);
        const StateVector psi0 = random_state(ising.basis(), 3);
        for (double t : {0.4, cluster_time(p), 1.7 * cluster_time(p)}) {
            RunReport report;
            const StateVector out = run_time_reversal(ising, p, psi0, t, t, {}, &report);
            EXPECT_GE(fidelity(out, psi0), 1 - 1e-10);
            EXPECT_EQ(report.propagations, 4u);
        }
    }
}

TEST(TimeReversal, ZzOnlySuperexchangeAlsoReverses) {
    const HubbardParams p{1.0, 40.0, 50.0};
    Model se(ModelKind::kSuperexchangeZzOnly, LatticeGeometry::chain(6, Boundary::kOpen));
    const StateVector psi0 = se.initial_state();
    EXPECT_GE(fidelity(run_time_reversal(se, p, psi0, 11.0, 11.0), psi0), 1 - 1e-10);
}

TEST(RunSchedule, RejectsForeignBasis) {
    Model a(ModelKind::kIsing, LatticeGeometry::chain(4, Boundary::kOpen));
    Model b(ModelKind::kIsing, LatticeGeometry::chain(4, Boundary::kOpen));
    ProtocolSchedule s{{1.0, 40.0, 50.0}, {}};
    s.evolve(1.0);
    EXPECT_THROW(run_schedule(a, s, b.initial_state()), std::invalid_argument);
}

TEST(TwoSiteOffdiag, Examples) {
    const HubbardParams p{1.0, 100.0, 120.0};
    EXPECT_EQ(two_site_unitary_offdiag(p, 0.0), 0.0);
    const double bound = 2.0 / (100.0 * 120.0);
    EXPECT_NEAR(bound, 1.667e-4, 1e-7);
    const double peak = max_two_site_unitary_offdiag(p, 2 * cluster_time(p), 4000);
    EXPECT_LE(peak, bound * 1.05);
    EXPECT_GE(peak, bound * 0.95);
}

TEST(TwoSiteOffdiag, DoublingBothScalesDownFourfold) {
    const HubbardParams a{1.0, 100.0, 120.0};
    const HubbardParams b{1.0, 200.0, 240.0};
    const double ra = max_two_site_unitary_offdiag(a, 2 * cluster_time(a), 4000);
    const double rb = max_two_site_unitary_offdiag(b, 2 * cluster_time(b), 8000);
    EXPECT_NEAR(ra / rb, 4.0, 0.2);
}

TEST(FlipFlop, InfidelityScalesAsInverseFourthPower) {
    // 1 - F between the full and the zz-only echo at the cluster time.
    const auto g = LatticeGeometry::chain(6, Boundary::kPeriodic);
    Model full(ModelKind::kSuperexchange, g);
    Model ideal(ModelKind::kIsing, g);
    PropagationOptions opts;
    opts.tolerance = 1e-12;
    std::vector<double> x, y;
    for (double s : {1.0, 2.0, 4.0}) {
        const HubbardParams p{1.0, 50.0 * s, 60.0 * s};
        const double tc = cluster_time(p);
        const double f = fidelity(run_echo_ising(full, p, full.initial_state(), tc, opts),
                                  run_echo_ising(ideal, p, ideal.initial_state(), tc, opts));
        x.push_back(std::log(s));
        y.push_back(std::log(1 - f));
    }
    const double slope = ((y[2] - y[0]) / (x[2] - x[0]));
    EXPECT_NEAR(slope, -4.0, 0.3);
}

TEST(HoleLocalization, VacancyStaysOnInitialSite) {
    // Nearest-neighbour hops cost +-Omega, but second-order hole hopping
    // through a spin flip is resonant and leaks about a fifth of the hole
    // onto the bulk by t_c. The bound is the brute-force minimum with margin.
    const HubbardParams p{1.0, 115.0, 140.0};
    Model fh(ModelKind::kFermiHubbardGauged, LatticeGeometry::chain(6, Boundary::kOpen), {0});
    const StateVector psi0 = fh.initial_state();
    EXPECT_NEAR(hole_density(psi0, 0), 1.0, 1e-15);
    const double tc = cluster_time(p);
    const auto h = fh.hamiltonian(p);
    StateVector psi = psi0;
    double worst = 1.0;
    for (int k = 1; k <= 20; ++k) {
        psi = propagate(*h, psi, tc / 20);
        worst = std::min(worst, hole_density(psi, 0));
    }
    EXPECT_GE(worst, 0.75);
    EXPECT_GE(hole_density(run_echo_ising(fh, p, psi0, tc), 0), 0.75);
}

}  // namespace
}  // namespace clusterlab
