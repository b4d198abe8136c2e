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

#ifndef CLUSTERLAB_BASIS_H_
#define CLUSTERLAB_BASIS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace clusterlab {

/// Per-site occupations of a basis state in the gauged (d-operator) frame.
/// Bit j of `up` / `down` is set when site j holds a spin-up / spin-down
/// fermion. Every basis in this library reports its states this way, which
/// lets spin observables, pulses and fidelities work across bases.
struct Occupation {
    std::uint64_t up = 0;
    std::uint64_t down = 0;

    bool singly_occupied(std::size_t site) const {
        return ((up ^ down) >> site) & 1u;
    }
    bool empty(std::size_t site) const {
        return !(((up | down) >> site) & 1u);
    }
    bool operator==(const Occupation &) const = default;
};

enum class BasisKind { kFock, kSpinHalf, kSpinOne };

/// Enumerated Hilbert-space basis. Occupations are materialized eagerly;
/// derived classes supply the inverse lookup.
class Basis {
   public:
    virtual ~Basis() = default;

    virtual BasisKind kind() const = 0;
    virtual std::string_view name() const = 0;
    /// Index of the basis state with this occupation, or nullopt when the
    /// configuration lies outside the basis.
    virtual std::optional<std::size_t> find(const Occupation &occupation) const = 0;

    std::size_t dimension() const {
        return occupations_.size();
    }
    std::size_t site_count() const {
        return sites_;
    }
    const Occupation &occupation(std::size_t index) const {
        return occupations_[index];
    }
    const std::vector<Occupation> &occupations() const {
        return occupations_;
    }

   protected:
    explicit Basis(std::size_t sites) : sites_(sites) {
    }
    std::size_t sites_;
    std::vector<Occupation> occupations_;
};

enum class Spin { kUp = 0, kDown = 1 };
enum class FermionOp { kCreate, kAnnihilate };

/// Which Fock configurations to keep at fixed particle number.
enum class FockSector {
    kAll,
    kNoDoublons,
    kSinglyOccupied,
};

/// Orbital index 2*site + spin: site-major, up before down.
constexpr std::size_t orbital_index(std::size_t site, Spin spin) {
    return 2 * site + static_cast<std::size_t>(spin);
}

/// Applies a single creation or annihilation operator to a Fock state given
/// as an orbital bitmask. Returns the new state and the sign
/// (-1)^(number of occupied orbitals preceding the target), or nullopt when
/// Pauli-blocked.
std::optional<std::pair<std::uint64_t, int>> apply_fermion(
    std::uint64_t state, FermionOp op, std::size_t site, Spin spin);

/// Applies d^dagger_{to} d_{from}; nullopt when blocked.
std::optional<std::pair<std::uint64_t, int>> apply_hop(
    std::uint64_t state, std::size_t to_site, Spin to_spin, std::size_t from_site, Spin from_spin);

/// Fermionic Fock basis at fixed total particle number, lowest band only.
/// States are orbital bitmasks sorted ascending.
class FockBasis final : public Basis {
   public:
    FockBasis(std::size_t sites, std::size_t particles, FockSector sector = FockSector::kAll);

    /// Dimension the constructor would produce, without enumerating.
    static std::uint64_t count(std::size_t sites, std::size_t particles, FockSector sector);

    BasisKind kind() const override {
        return BasisKind::kFock;
    }
    std::string_view name() const override {
        return "fock";
    }
    std::optional<std::size_t> find(const Occupation &occupation) const override;

    std::optional<std::size_t> find_state(std::uint64_t orbital_mask) const;
    std::uint64_t state(std::size_t index) const {
        return states_[index];
    }
    const std::vector<std::uint64_t> &states() const {
        return states_;
    }
    std::size_t particles() const {
        return particles_;
    }
    FockSector sector() const {
        return sector_;
    }

    static std::uint64_t to_orbitals(const Occupation &occupation);
    static Occupation to_occupation(std::uint64_t orbitals);

   private:
    std::size_t particles_;
    FockSector sector_;
    std::vector<std::uint64_t> states_;
};

/// Spin-1/2 product basis; the index is the bitstring with bit j set for
/// spin up on site j.
class SpinBasis final : public Basis {
   public:
    explicit SpinBasis(std::size_t sites);

    BasisKind kind() const override {
        return BasisKind::kSpinHalf;
    }
    std::string_view name() const override {
        return "spin-1/2";
    }
    std::optional<std::size_t> find(const Occupation &occupation) const override;
};

/// Spin-1 product basis with m_s = +1 (up), 0 (hole), -1 (down).
///
/// The index is the base-3 number with digit (1 - m_s) at position j. With
/// `holes` set, only configurations with exactly that many m_s = 0 sites are
/// kept (the dynamics conserve hole number); otherwise the full 3^L space.
class Spin1Basis final : public Basis {
   public:
    explicit Spin1Basis(std::size_t sites, std::optional<std::size_t> holes = std::nullopt);

    static std::uint64_t count(std::size_t sites, std::optional<std::size_t> holes);

    BasisKind kind() const override {
        return BasisKind::kSpinOne;
    }
    std::string_view name() const override {
        return "spin-1";
    }
    std::optional<std::size_t> find(const Occupation &occupation) const override;

    /// m_s on `site` for basis state `index`.
    int magnetization(std::size_t index, std::size_t site) const;
    std::uint64_t code(std::size_t index) const;
    std::optional<std::size_t> find_code(std::uint64_t code) const;
    std::optional<std::size_t> holes() const {
        return holes_;
    }

   private:
    std::optional<std::size_t> holes_;
    std::vector<std::uint64_t> codes_;  // empty for the full space
    std::vector<std::uint64_t> powers_;
};

/// Index map from every state of `from` to the state of `to` with the same
/// occupation. Throws std::invalid_argument if any state has no image.
std::vector<std::size_t> embedding(const Basis &from, const Basis &to);

/// Fock singly-occupied sector -> spin-1/2 basis. Requires N = L with every
/// site singly occupied.
std::vector<std::size_t> spin_half_embedding(const FockBasis &fock, const SpinBasis &spins);

/// Fock no-doublon sector -> spin-1 basis.
std::vector<std::size_t> spin1_embedding(const FockBasis &fock, const Spin1Basis &spin1);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace clusterlab

#endif  // CLUSTERLAB_BASIS_H_
