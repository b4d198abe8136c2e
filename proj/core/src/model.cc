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

#include "clusterlab/model.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace clusterlab {

namespace {

constexpr std::array<std::pair<ModelKind, std::string_view>, 6> kKindNames{{
    {ModelKind::kFermiHubbardGauged, "fermi_hubbard_gauged"},
    {ModelKind::kFermiHubbardLiteral, "fermi_hubbard_literal"},
    {ModelKind::kSuperexchange, "superexchange"},
    {ModelKind::kSuperexchangeZzOnly, "superexchange_zz_only"},
    {ModelKind::kSpin1, "spin1"},
    {ModelKind::kIsing, "ising"},
}};

bool is_fock(ModelKind kind) {
    return kind == ModelKind::kFermiHubbardGauged || kind == ModelKind::kFermiHubbardLiteral;
}

bool is_spin_half(ModelKind kind) {
    return kind == ModelKind::kSuperexchange || kind == ModelKind::kSuperexchangeZzOnly ||
           kind == ModelKind::kIsing;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > UINT64_MAX / a) {
        return UINT64_MAX;
    }
    return a * b;
}

}  // namespace

std::string_view to_string(ModelKind kind) {
    for (const auto &[k, name] : kKindNames) {
        if (k == kind) {
            return name;
        }
    }
    return "unknown";
}

std::optional<ModelKind> parse_model_kind(std::string_view name) {
    for (const auto &[k, n] : kKindNames) {
        if (n == name) {
            return k;
        }
    }
    return std::nullopt;
}

SizeEstimate Model::estimate(ModelKind kind, const LatticeGeometry &geometry, std::size_t holes) {
    const std::size_t sites = geometry.site_count();
    const std::uint64_t bonds = geometry.bonds().size();
    SizeEstimate e;
    if (holes > sites) {
        throw std::invalid_argument("more vacancies than sites");
    }
    if (is_fock(kind)) {
        e.dimension = FockBasis::count(sites, sites - holes, FockSector::kAll);
        e.nonzeros = saturating_mul(e.dimension, 4 * bonds + 1);
    } else if (is_spin_half(kind)) {
        if (holes != 0) {
            throw std::invalid_argument(std::string(to_string(kind)) + " does not support vacancies");
        }
        e.dimension = sites >= 64 ? UINT64_MAX : (std::uint64_t{1} << sites);
        // Flip-flop terms connect exactly the aligned bonds: half of them on average.
        const std::uint64_t per_row = kind == ModelKind::kSuperexchange ? (bonds + 1) / 2 + 1 : 1;
        e.nonzeros = saturating_mul(e.dimension, per_row);
    } else {
        e.dimension = Spin1Basis::count(sites, holes);
        e.nonzeros = saturating_mul(e.dimension, 4 * bonds + 1);
    }
    return e;
}

Model::Model(ModelKind kind, LatticeGeometry geometry, std::vector<std::size_t> vacancies)
    : kind_(kind), geometry_(std::move(geometry)), vacancies_(std::move(vacancies)) {
    std::sort(vacancies_.begin(), vacancies_.end());
    if (std::adjacent_find(vacancies_.begin(), vacancies_.end()) != vacancies_.end()) {
        throw std::invalid_argument("vacancy sites must be distinct");
    }
    const std::size_t sites = geometry_.site_count();
    for (std::size_t v : vacancies_) {
        if (v >= sites) {
            throw std::out_of_range("vacancy site " + std::to_string(v) + " outside the lattice");
        }
    }
    const std::size_t holes = vacancies_.size();
    (void)estimate(kind_, geometry_, holes);
    if (is_fock(kind_)) {
        basis_ = std::make_shared<FockBasis>(sites, sites - holes, FockSector::kAll);
    } else if (is_spin_half(kind_)) {
        basis_ = std::make_shared<SpinBasis>(sites);
    } else {
        basis_ = std::make_shared<Spin1Basis>(sites, holes);
    }
}

std::shared_ptr<const SparseHermitianOperator> Model::hamiltonian(const HubbardParams &params) const {
    const auto key = std::make_tuple(params.J, params.U, params.Omega);
    {
        std::lock_guard lock(mutex_);
        if (auto it = cache_.find(key); it != cache_.end()) {
            return it->second;
        }
    }
    std::shared_ptr<const SparseHermitianOperator> h;
    switch (kind_) {
        case ModelKind::kFermiHubbardGauged:
            h = std::make_shared<SparseHermitianOperator>(build_fermi_hubbard_gauged(
                geometry_, params, std::static_pointer_cast<const FockBasis>(basis_)));
            break;
        case ModelKind::kFermiHubbardLiteral:
            h = std::make_shared<SparseHermitianOperator>(build_fermi_hubbard_literal(
                geometry_, params, std::static_pointer_cast<const FockBasis>(basis_)));
            break;
        case ModelKind::kSuperexchange:
        case ModelKind::kSuperexchangeZzOnly:
            h = std::make_shared<SparseHermitianOperator>(build_superexchange(
                geometry_, params, std::static_pointer_cast<const SpinBasis>(basis_),
                kind_ == ModelKind::kSuperexchange));
            break;
        case ModelKind::kSpin1:
            h = std::make_shared<SparseHermitianOperator>(
                build_spin1_hole(geometry_, params, std::static_pointer_cast<const Spin1Basis>(basis_)));
            break;
        case ModelKind::kIsing:
            validate(params);
            h = std::make_shared<SparseHermitianOperator>(
                build_ising(geometry_, j_zz(params), std::static_pointer_cast<const SpinBasis>(basis_)));
            break;
    }
    std::lock_guard lock(mutex_);
    return cache_.emplace(key, std::move(h)).first->second;
}

StateVector Model::initial_state() const {
    return spin_left_state(basis_, vacancies_);
}

}  // namespace clusterlab
