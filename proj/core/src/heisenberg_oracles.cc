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
#include <stdexcept>
#include <string>
#include <vector>

#include "clusterlab/observables.h"

namespace clusterlab {

namespace {

const std::vector<std::size_t> &checked_neighbors(
    const LatticeGeometry &geometry, std::size_t site, int dimensionality, std::size_t count) {
    if (geometry.dimensionality() != dimensionality) {
        throw std::invalid_argument(
            "expansion needs a " + std::to_string(dimensionality) + "D lattice, got " +
            std::to_string(geometry.dimensionality()) + "D");
    }
    if (site >= geometry.site_count()) {
        throw std::out_of_range("site out of range");
    }
    const auto &nb = geometry.neighbors(site);
    if (nb.size() != count) {
        throw std::invalid_argument(
            "site " + std::to_string(site) + " has " + std::to_string(nb.size()) + " neighbors, expected " +
            std::to_string(count));
    }
    return nb;
}

double string_value(const StateVector &psi, std::vector<SiteOp> ops) {
    return spin_string_expectation(psi, ops).real();
}

}  // namespace

SxExpansion1d analytic_sx_1d(const LatticeGeometry &geometry, std::size_t site, double t, double jzz) {
    (void)checked_neighbors(geometry, site, 1, 2);
    const double theta = jzz * t;
    const double s = std::sin(theta / 2.0);
    const double c = std::cos(theta / 2.0);
    return {c * c, -4.0 * s * s, std::sin(theta)};
}

SxExpansion2d analytic_sx_2d(const LatticeGeometry &geometry, std::size_t site, double t, double jzz) {
    (void)checked_neighbors(geometry, site, 2, 4);
    const double theta = jzz * t;
    const double s = std::sin(theta / 2.0);
    const double c = std::cos(theta / 2.0);
    const double sin_theta = std::sin(theta);
    return {
        c * c * c * c,
        16.0 * s * s * s * s,
        2.0 * s * c * c * c,
        -sin_theta * sin_theta,
        -8.0 * s * s * s * c,
    };
}

double expansion_expectation(
    const StateVector &psi, const LatticeGeometry &geometry, std::size_t site, const SxExpansion1d &c) {
    const auto &nb = checked_neighbors(geometry, site, 1, 2);
    double value = c.x * string_value(psi, {{site, Axis::kX}});
    value += c.zxz * string_value(psi, {{site, Axis::kX}, {nb[0], Axis::kZ}, {nb[1], Axis::kZ}});
    for (std::size_t k : nb) {
        value += c.y * string_value(psi, {{site, Axis::kY}, {k, Axis::kZ}});
    }
    return value;
}

double expansion_expectation(
    const StateVector &psi, const LatticeGeometry &geometry, std::size_t site, const SxExpansion2d &c) {
    const auto &nb = checked_neighbors(geometry, site, 2, 4);
    double value = c.x * string_value(psi, {{site, Axis::kX}});
    value += c.xzzzz * string_value(psi, {{site, Axis::kX},
                                          {nb[0], Axis::kZ},
                                          {nb[1], Axis::kZ},
                                          {nb[2], Axis::kZ},
                                          {nb[3], Axis::kZ}});
    for (std::size_t a = 0; a < 4; ++a) {
        value += c.yz * string_value(psi, {{site, Axis::kY}, {nb[a], Axis::kZ}});
        for (std::size_t b = a + 1; b < 4; ++b) {
            value += c.xzz * string_value(psi, {{site, Axis::kX}, {nb[a], Axis::kZ}, {nb[b], Axis::kZ}});
            for (std::size_t d = b + 1; d < 4; ++d) {
                value += c.yzzz * string_value(
                                      psi, {{site, Axis::kY}, {nb[a], Axis::kZ}, {nb[b], Axis::kZ}, {nb[d], Axis::kZ}});
            }
        }
    }
    return value;
}

}  // namespace clusterlab
