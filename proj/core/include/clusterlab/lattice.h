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

#ifndef CLUSTERLAB_LATTICE_H_
#define CLUSTERLAB_LATTICE_H_

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace clusterlab {

enum class Axis { kX = 0, kY = 1, kZ = 2 };
enum class Boundary { kOpen, kPeriodic };

struct Coords {
    int m = 0;
    int n = 0;
    int l = 0;
    bool operator==(const Coords &) const = default;
};

/// Unordered nearest-neighbour pair, stored with first < second.
struct Bond {
    std::size_t first;
    std::size_t second;
    bool operator==(const Bond &) const = default;
    auto operator<=>(const Bond &) const = default;
};

/// Hypercubic lattice of up to three dimensions.
///
/// Sites are numbered row-major, idx(m, n, l) = m + Lx*n + Lx*Ly*l. This is
/// also the Fock ordering used for fermionic sign strings. Axes that do not
/// permit tunneling must have extent 1. A periodic axis of extent 2 yields a
/// single bond between its two sites, never a doubled one.
class LatticeGeometry {
   public:
    static constexpr std::size_t kMaxSites = 32;

    LatticeGeometry(
        std::array<int, 3> extents, std::array<bool, 3> tunneling_axes, std::array<Boundary, 3> boundaries);

    static LatticeGeometry chain(int length, Boundary boundary);
    static LatticeGeometry rectangle(int lx, int ly, Boundary bx, Boundary by);
    static LatticeGeometry cuboid(int lx, int ly, int lz, Boundary boundary);

    std::size_t site_count() const {
        return site_count_;
    }
    int extent(Axis axis) const {
        return extents_[static_cast<int>(axis)];
    }
    bool tunnels_along(Axis axis) const {
        return tunneling_[static_cast<int>(axis)];
    }
    Boundary boundary(Axis axis) const {
        return boundaries_[static_cast<int>(axis)];
    }
    /// Number of axes along which tunneling is permitted (D).
    int dimensionality() const;

    std::size_t index(Coords c) const;
    Coords coords(std::size_t site) const;

    /// Every nearest-neighbour bond once, sorted by (first, second).
    const std::vector<Bond> &bonds() const {
        return bonds_;
    }
    /// Distinct neighbours of a site, ascending.
    const std::vector<std::size_t> &neighbors(std::size_t site) const;
    bool are_neighbors(std::size_t a, std::size_t b) const;

    /// (-1)^(m+n+l). Throws std::domain_error when a periodic tunneling axis
    /// has odd extent, since the staggering then cannot alternate across the
    /// wrap bond.
    int stagger_sign(std::size_t site) const;

    /// Sites with linear index strictly between j and k. Throws
    /// std::invalid_argument unless j and k are nearest neighbours.
    std::vector<std::size_t> mid_sites(std::size_t j, std::size_t k) const;

    std::string describe() const;

   private:
    std::array<int, 3> extents_;
    std::array<bool, 3> tunneling_;
    std::array<Boundary, 3> boundaries_;
    std::size_t site_count_;
    std::vector<Bond> bonds_;
    std::vector<std::vector<std::size_t>> neighbors_;
};

/// Free-function spelling of LatticeGeometry::bonds().
std::vector<Bond> neighbor_pairs(const LatticeGeometry &geometry);

}  // namespace clusterlab

#endif  // CLUSTERLAB_LATTICE_H_
