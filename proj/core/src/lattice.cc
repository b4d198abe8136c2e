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

#include "clusterlab/lattice.h"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace clusterlab {

LatticeGeometry::LatticeGeometry(
    std::array<int, 3> extents, std::array<bool, 3> tunneling_axes, std::array<Boundary, 3> boundaries)
    : extents_(extents), tunneling_(tunneling_axes), boundaries_(boundaries), site_count_(1) {
    for (int a = 0; a < 3; ++a) {
        if (extents_[a] < 1) {
            throw std::invalid_argument("lattice extents must be positive");
        }
        if (!tunneling_[a] && extents_[a] != 1) {
            throw std::invalid_argument(
                "axis " + std::string(1, "xyz"[a]) + " has extent " + std::to_string(extents_[a]) +
                " but tunneling is disabled along it; non-tunneling axes must have extent 1");
        }
        site_count_ *= static_cast<std::size_t>(extents_[a]);
    }
    if (site_count_ > kMaxSites) {
        throw std::invalid_argument(
            "lattice has " + std::to_string(site_count_) + " sites; at most " + std::to_string(kMaxSites) +
            " are supported");
    }

    std::set<Bond> unique;
    for (std::size_t s = 0; s < site_count_; ++s) {
        Coords c = coords(s);
        for (int a = 0; a < 3; ++a) {
            if (!tunneling_[a] || extents_[a] < 2) {
                continue;
            }
            std::array<int, 3> v{c.m, c.n, c.l};
            if (v[a] + 1 < extents_[a]) {
                v[a] += 1;
            } else if (boundaries_[a] == Boundary::kPeriodic) {
                v[a] = 0;
            } else {
                continue;
            }
            std::size_t t = index({v[0], v[1], v[2]});
            if (t != s) {
                unique.insert({std::min(s, t), std::max(s, t)});
            }
        }
    }
    bonds_.assign(unique.begin(), unique.end());

    neighbors_.resize(site_count_);
    for (const Bond &b : bonds_) {
        neighbors_[b.first].push_back(b.second);
        neighbors_[b.second].push_back(b.first);
    }
    for (auto &list : neighbors_) {
        std::sort(list.begin(), list.end());
    }
}

LatticeGeometry LatticeGeometry::chain(int length, Boundary boundary) {
    return LatticeGeometry({length, 1, 1}, {true, false, false}, {boundary, Boundary::kOpen, Boundary::kOpen});
}

LatticeGeometry LatticeGeometry::rectangle(int lx, int ly, Boundary bx, Boundary by) {
    return LatticeGeometry({lx, ly, 1}, {true, true, false}, {bx, by, Boundary::kOpen});
}

LatticeGeometry LatticeGeometry::cuboid(int lx, int ly, int lz, Boundary boundary) {
    return LatticeGeometry({lx, ly, lz}, {true, true, true}, {boundary, boundary, boundary});
}

int LatticeGeometry::dimensionality() const {
    return static_cast<int>(tunneling_[0]) + static_cast<int>(tunneling_[1]) + static_cast<int>(tunneling_[2]);
}

std::size_t LatticeGeometry::index(Coords c) const {
    if (c.m < 0 || c.m >= extents_[0] || c.n < 0 || c.n >= extents_[1] || c.l < 0 || c.l >= extents_[2]) {
        throw std::out_of_range("lattice coordinates out of range");
    }
    return static_cast<std::size_t>(c.m + extents_[0] * c.n + extents_[0] * extents_[1] * c.l);
}

Coords LatticeGeometry::coords(std::size_t site) const {
    if (site >= site_count_) {
        throw std::out_of_range("site index " + std::to_string(site) + " out of range");
    }
    int s = static_cast<int>(site);
    Coords c;
    c.m = s % extents_[0];
    s /= extents_[0];
    c.n = s % extents_[1];
    c.l = s / extents_[1];
    return c;
}

const std::vector<std::size_t> &LatticeGeometry::neighbors(std::size_t site) const {
    if (site >= site_count_) {
        throw std::out_of_range("site index " + std::to_string(site) + " out of range");
    }
    return neighbors_[site];
}

bool LatticeGeometry::are_neighbors(std::size_t a, std::size_t b) const {
    const auto &list = neighbors(a);
    return std::binary_search(list.begin(), list.end(), b);
}

int LatticeGeometry::stagger_sign(std::size_t site) const {
    for (int a = 0; a < 3; ++a) {
        if (tunneling_[a] && boundaries_[a] == Boundary::kPeriodic && extents_[a] > 2 && extents_[a] % 2 != 0) {
            throw std::domain_error(
                "staggering is frustrated: periodic axis " + std::string(1, "xyz"[a]) + " has odd extent " +
                std::to_string(extents_[a]));
        }
    }
    Coords c = coords(site);
    return ((c.m + c.n + c.l) % 2 == 0) ? 1 : -1;
}

std::vector<std::size_t> LatticeGeometry::mid_sites(std::size_t j, std::size_t k) const {
    if (!are_neighbors(j, k)) {
        throw std::invalid_argument(
            "mid_sites requires nearest neighbours; got " + std::to_string(j) + " and " + std::to_string(k));
    }
    std::vector<std::size_t> out;
    for (std::size_t p = std::min(j, k) + 1; p < std::max(j, k); ++p) {
        out.push_back(p);
    }
    return out;
}

std::string LatticeGeometry::describe() const {
    std::ostringstream os;
    bool first = true;
    for (int a = 0; a < 3; ++a) {
        if (!tunneling_[a]) {
            continue;
        }
        if (!first) {
            os << "x";
        }
        os << extents_[a] << (boundaries_[a] == Boundary::kPeriodic ? "p" : "o");
        first = false;
    }
    if (first) {
        os << "1";
    }
    return os.str();
}

std::vector<Bond> neighbor_pairs(const LatticeGeometry &geometry) {
    return geometry.bonds();
}

}  // namespace clusterlab
