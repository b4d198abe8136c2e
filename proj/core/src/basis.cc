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

#include "clusterlab/basis.h"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "clusterlab/lattice.h"

namespace clusterlab {

namespace {

constexpr std::uint64_t kMaxEnumeratedDimension = 200'000'000;

// Even bits of a 64-bit word compressed into the low 32 bits.
std::uint64_t compress_even_bits(std::uint64_t x) {
    x &= 0x5555555555555555ull;
    x = (x | (x >> 1)) & 0x3333333333333333ull;
    x = (x | (x >> 2)) & 0x0F0F0F0F0F0F0F0Full;
    x = (x | (x >> 4)) & 0x00FF00FF00FF00FFull;
    x = (x | (x >> 8)) & 0x0000FFFF0000FFFFull;
    x = (x | (x >> 16)) & 0x00000000FFFFFFFFull;
    return x;
}

std::uint64_t spread_to_even_bits(std::uint64_t x) {
    x &= 0x00000000FFFFFFFFull;
    x = (x | (x << 16)) & 0x0000FFFF0000FFFFull;
    x = (x | (x << 8)) & 0x00FF00FF00FF00FFull;
    x = (x | (x << 4)) & 0x0F0F0F0F0F0F0F0Full;
    x = (x | (x << 2)) & 0x3333333333333333ull;
    x = (x | (x << 1)) & 0x5555555555555555ull;
    return x;
}

std::uint64_t low_mask(std::size_t bits) {
    return bits >= 64 ? ~0ull : ((1ull << bits) - 1);
}

void check_sites(std::size_t sites) {
    if (sites == 0 || sites > LatticeGeometry::kMaxSites) {
        throw std::invalid_argument("basis site count must be in [1, 32], got " + std::to_string(sites));
    }
}

void check_dimension(std::uint64_t dim, std::string_view what) {
    if (dim > kMaxEnumeratedDimension) {
        throw std::length_error(
            std::string(what) + " dimension " + std::to_string(dim) + " is too large to enumerate");
    }
}

}  // namespace

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

std::optional<std::pair<std::uint64_t, int>> apply_fermion(
    std::uint64_t state, FermionOp op, std::size_t site, Spin spin) {
    std::size_t orb = orbital_index(site, spin);
    std::uint64_t bit = 1ull << orb;
    bool occupied = (state & bit) != 0;
    if ((op == FermionOp::kCreate) == occupied) {
        return std::nullopt;
    }
    int sign = (std::popcount(state & (bit - 1)) % 2 == 0) ? 1 : -1;
    return std::make_pair(state ^ bit, sign);
}

std::optional<std::pair<std::uint64_t, int>> apply_hop(
    std::uint64_t state, std::size_t to_site, Spin to_spin, std::size_t from_site, Spin from_spin) {
    auto a = apply_fermion(state, FermionOp::kAnnihilate, from_site, from_spin);
    if (!a) {
        return std::nullopt;
    }
    auto c = apply_fermion(a->first, FermionOp::kCreate, to_site, to_spin);
    if (!c) {
        return std::nullopt;
    }
    return std::make_pair(c->first, a->second * c->second);
}

// ---------------------------------------------------------------------------
// FockBasis

std::uint64_t FockBasis::count(std::size_t sites, std::size_t particles, FockSector sector) {
    switch (sector) {
        case FockSector::kAll:
            return binomial(2 * sites, particles);
        case FockSector::kNoDoublons:
            return particles > sites ? 0 : binomial(sites, particles) << particles;
        case FockSector::kSinglyOccupied:
            return particles == sites ? (1ull << sites) : 0;
    }
    return 0;
}

FockBasis::FockBasis(std::size_t sites, std::size_t particles, FockSector sector)
    : Basis(sites), particles_(particles), sector_(sector) {
    check_sites(sites);
    if (particles > 2 * sites) {
        throw std::invalid_argument(
            "particle number " + std::to_string(particles) + " exceeds 2L = " + std::to_string(2 * sites));
    }
    if (sector == FockSector::kSinglyOccupied && particles != sites) {
        throw std::invalid_argument("the singly-occupied sector requires N = L");
    }
    std::uint64_t dim = count(sites, particles, sector);
    check_dimension(dim, "Fock basis");
    states_.reserve(dim);

    const std::size_t orbitals = 2 * sites;
    const std::uint64_t limit = low_mask(orbitals);
    auto keep = [&](std::uint64_t s) {
        if (sector == FockSector::kAll) {
            return true;
        }
        std::uint64_t up = compress_even_bits(s);
        std::uint64_t down = compress_even_bits(s >> 1);
        return (up & down) == 0;
    };
    if (particles == 0) {
        states_.push_back(0);
    } else {
        // Gosper's hack: all bit patterns with `particles` ones, ascending.
        std::uint64_t s = low_mask(particles);
        while (true) {
            if (keep(s)) {
                states_.push_back(s);
            }
            if (s == (limit & ~low_mask(orbitals - particles))) {
                break;
            }
            std::uint64_t c = s & (~s + 1);
            std::uint64_t r = s + c;
            s = (((r ^ s) >> 2) / c) | r;
        }
    }
    occupations_.reserve(states_.size());
    for (std::uint64_t s : states_) {
        occupations_.push_back(to_occupation(s));
    }
}

std::uint64_t FockBasis::to_orbitals(const Occupation &occupation) {
    return spread_to_even_bits(occupation.up) | (spread_to_even_bits(occupation.down) << 1);
}

Occupation FockBasis::to_occupation(std::uint64_t orbitals) {
    return {compress_even_bits(orbitals), compress_even_bits(orbitals >> 1)};
}

std::optional<std::size_t> FockBasis::find_state(std::uint64_t orbital_mask) const {
    auto it = std::lower_bound(states_.begin(), states_.end(), orbital_mask);
    if (it == states_.end() || *it != orbital_mask) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - states_.begin());
}

std::optional<std::size_t> FockBasis::find(const Occupation &occupation) const {
    return find_state(to_orbitals(occupation));
}

// ---------------------------------------------------------------------------
// SpinBasis

SpinBasis::SpinBasis(std::size_t sites) : Basis(sites) {
    check_sites(sites);
    check_dimension(1ull << sites, "spin-1/2 basis");
    const std::uint64_t mask = low_mask(sites);
    occupations_.resize(1ull << sites);
    for (std::uint64_t i = 0; i < occupations_.size(); ++i) {
        occupations_[i] = {i, ~i & mask};
    }
}

std::optional<std::size_t> SpinBasis::find(const Occupation &occupation) const {
    const std::uint64_t mask = low_mask(sites_);
    if ((occupation.up & occupation.down) != 0 || (occupation.up | occupation.down) != mask) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(occupation.up);
}

// ---------------------------------------------------------------------------
// Spin1Basis

std::uint64_t Spin1Basis::count(std::size_t sites, std::optional<std::size_t> holes) {
    if (holes) {
        return *holes > sites ? 0 : binomial(sites, *holes) << (sites - *holes);
    }
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < sites; ++i) {
        r *= 3;
    }
    return r;
}

Spin1Basis::Spin1Basis(std::size_t sites, std::optional<std::size_t> holes) : Basis(sites), holes_(holes) {
    check_sites(sites);
    if (holes && *holes > sites) {
        throw std::invalid_argument("hole count exceeds site count");
    }
    check_dimension(count(sites, holes), "spin-1 basis");
    powers_.resize(sites + 1);
    powers_[0] = 1;
    for (std::size_t i = 1; i <= sites; ++i) {
        powers_[i] = powers_[i - 1] * 3;
    }

    auto decode = [&](std::uint64_t code) {
        Occupation occ;
        for (std::size_t j = 0; j < sites; ++j) {
            std::uint64_t digit = code % 3;
            code /= 3;
            if (digit == 0) {
                occ.up |= 1ull << j;
            } else if (digit == 2) {
                occ.down |= 1ull << j;
            }
        }
        return occ;
    };

    if (!holes) {
        occupations_.resize(powers_[sites]);
        for (std::uint64_t c = 0; c < powers_[sites]; ++c) {
            occupations_[c] = decode(c);
        }
        return;
    }

    const std::size_t h = *holes;
    const std::size_t particles = sites - h;
    codes_.reserve(count(sites, holes));
    // Enumerate hole placements, then spin patterns on the occupied sites.
    std::vector<std::size_t> occupied;
    for (std::uint64_t hole_mask = 0; hole_mask < (1ull << sites); ++hole_mask) {
        if (static_cast<std::size_t>(std::popcount(hole_mask)) != h) {
            continue;
        }
        occupied.clear();
        std::uint64_t base = 0;
        for (std::size_t j = 0; j < sites; ++j) {
            if ((hole_mask >> j) & 1u) {
                base += powers_[j];
            } else {
                occupied.push_back(j);
            }
        }
        for (std::uint64_t pattern = 0; pattern < (1ull << particles); ++pattern) {
            std::uint64_t code = base;
            for (std::size_t q = 0; q < particles; ++q) {
                if ((pattern >> q) & 1u) {
                    code += 2 * powers_[occupied[q]];
                }
            }
            codes_.push_back(code);
        }
    }
    std::sort(codes_.begin(), codes_.end());
    occupations_.reserve(codes_.size());
    for (std::uint64_t c : codes_) {
        occupations_.push_back(decode(c));
    }
}

std::uint64_t Spin1Basis::code(std::size_t index) const {
    return codes_.empty() ? static_cast<std::uint64_t>(index) : codes_[index];
}

std::optional<std::size_t> Spin1Basis::find_code(std::uint64_t code) const {
    if (codes_.empty()) {
        if (holes_ || code >= powers_[sites_]) {
            return std::nullopt;
        }
        return static_cast<std::size_t>(code);
    }
    auto it = std::lower_bound(codes_.begin(), codes_.end(), code);
    if (it == codes_.end() || *it != code) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - codes_.begin());
}

int Spin1Basis::magnetization(std::size_t index, std::size_t site) const {
    const Occupation &occ = occupations_[index];
    if ((occ.up >> site) & 1u) {
        return 1;
    }
    if ((occ.down >> site) & 1u) {
        return -1;
    }
    return 0;
}

std::optional<std::size_t> Spin1Basis::find(const Occupation &occupation) const {
    if ((occupation.up & occupation.down) != 0 || ((occupation.up | occupation.down) & ~low_mask(sites_)) != 0) {
        return std::nullopt;
    }
    std::uint64_t code = 0;
    for (std::size_t j = 0; j < sites_; ++j) {
        if ((occupation.up >> j) & 1u) {
            continue;
        }
        code += ((occupation.down >> j) & 1u) ? 2 * powers_[j] : powers_[j];
    }
    return find_code(code);
}

// ---------------------------------------------------------------------------
// Embeddings

std::vector<std::size_t> embedding(const Basis &from, const Basis &to) {
    if (from.site_count() != to.site_count()) {
        throw std::invalid_argument("embedding between bases with different site counts");
    }
    std::vector<std::size_t> map(from.dimension());
    for (std::size_t i = 0; i < from.dimension(); ++i) {
        auto j = to.find(from.occupation(i));
        if (!j) {
            throw std::invalid_argument(
                "state " + std::to_string(i) + " of the " + std::string(from.name()) + " basis has no image in the " +
                std::string(to.name()) + " basis");
        }
        map[i] = *j;
    }
    return map;
}

std::vector<std::size_t> spin_half_embedding(const FockBasis &fock, const SpinBasis &spins) {
    if (fock.particles() != fock.site_count()) {
        throw std::invalid_argument("spin-1/2 embedding requires half filling (N = L)");
    }
    for (const Occupation &occ : fock.occupations()) {
        if ((occ.up & occ.down) != 0) {
            throw std::invalid_argument("spin-1/2 embedding: Fock sector contains doublons or holes");
        }
    }
    return embedding(fock, spins);
}

std::vector<std::size_t> spin1_embedding(const FockBasis &fock, const Spin1Basis &spin1) {
    for (const Occupation &occ : fock.occupations()) {
        if ((occ.up & occ.down) != 0) {
            throw std::invalid_argument("spin-1 embedding: Fock sector contains doublons");
        }
    }
    return embedding(fock, spin1);
}

}  // namespace clusterlab
