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

#include "clusterlab/state.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace clusterlab {

StateVector::StateVector(std::shared_ptr<const Basis> basis, std::vector<cplx> amplitudes)
    : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
    if (!basis_) {
        throw std::invalid_argument("state requires a basis");
    }
    if (amplitudes_.size() != basis_->dimension()) {
        throw std::invalid_argument(
            "state has " + std::to_string(amplitudes_.size()) + " amplitudes but the basis has dimension " +
            std::to_string(basis_->dimension()));
    }
}

StateVector StateVector::basis_state(std::shared_ptr<const Basis> basis, std::size_t index) {
    if (!basis || index >= basis->dimension()) {
        throw std::out_of_range("basis state index out of range");
    }
    std::vector<cplx> amps(basis->dimension(), 0.0);
    amps[index] = 1.0;
    return StateVector(std::move(basis), std::move(amps));
}

double StateVector::norm() const {
    double sum = 0.0;
    for (const cplx &a : amplitudes_) {
        sum += std::norm(a);
    }
    return std::sqrt(sum);
}

void StateVector::normalize() {
    const double n = norm();
    if (n == 0.0) {
        throw std::domain_error("cannot normalize the zero vector");
    }
    for (cplx &a : amplitudes_) {
        a /= n;
    }
}

cplx inner_product(const StateVector &a, const StateVector &b) {
    if (a.basis_ptr() != b.basis_ptr()) {
        throw std::invalid_argument("inner product of states on different bases");
    }
    cplx sum = 0.0;
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        sum += std::conj(a[i]) * b[i];
    }
    return sum;
}

Spinor spin_left() {
    return {std::numbers::sqrt2 / 2.0, -std::numbers::sqrt2 / 2.0};
}

Spinor spin_right() {
    return {std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0};
}

StateVector product_state(std::shared_ptr<const Basis> basis, const std::vector<std::optional<Spinor>> &sites) {
    if (!basis) {
        throw std::invalid_argument("product state requires a basis");
    }
    if (sites.size() != basis->site_count()) {
        throw std::invalid_argument("product state needs one entry per site");
    }
    double expected = 1.0;
    for (const auto &s : sites) {
        if (s) {
            expected *= std::norm(s->up) + std::norm(s->down);
        }
    }
    std::vector<cplx> amps(basis->dimension(), 0.0);
    double captured = 0.0;
    for (std::size_t i = 0; i < basis->dimension(); ++i) {
        const Occupation &occ = basis->occupation(i);
        cplx a = 1.0;
        for (std::size_t j = 0; j < sites.size() && a != 0.0; ++j) {
            if (!sites[j]) {
                a = occ.empty(j) ? a : 0.0;
            } else if (!occ.singly_occupied(j)) {
                a = 0.0;
            } else {
                a *= ((occ.up >> j) & 1u) ? sites[j]->up : sites[j]->down;
            }
        }
        amps[i] = a;
        captured += std::norm(a);
    }
    if (std::abs(captured - expected) > 1e-12 * std::max(1.0, expected)) {
        throw std::invalid_argument("basis '" + std::string(basis->name()) +
                                    "' does not contain the full support of the product state");
    }
    StateVector state(std::move(basis), std::move(amps));
    state.normalize();
    return state;
}

StateVector spin_left_state(std::shared_ptr<const Basis> basis, const std::vector<std::size_t> &vacancies) {
    if (!basis) {
        throw std::invalid_argument("product state requires a basis");
    }
    std::vector<std::optional<Spinor>> sites(basis->site_count(), spin_left());
    for (std::size_t v : vacancies) {
        if (v >= sites.size()) {
            throw std::out_of_range("vacancy site " + std::to_string(v) + " out of range");
        }
        sites[v] = std::nullopt;
    }
    return product_state(std::move(basis), sites);
}

}  // namespace clusterlab
