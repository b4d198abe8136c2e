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

#ifndef CLUSTERLAB_STATE_H_
#define CLUSTERLAB_STATE_H_

#include <complex>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "clusterlab/basis.h"
#include "clusterlab/sparse_operator.h"

namespace clusterlab {

/// Complex amplitudes over a shared basis.
class StateVector {
   public:
    /// Throws std::invalid_argument when the length does not match the basis.
    StateVector(std::shared_ptr<const Basis> basis, std::vector<cplx> amplitudes);

    static StateVector basis_state(std::shared_ptr<const Basis> basis, std::size_t index);

    const Basis &basis() const {
        return *basis_;
    }
    const std::shared_ptr<const Basis> &basis_ptr() const {
        return basis_;
    }
    std::size_t dimension() const {
        return amplitudes_.size();
    }
    std::span<const cplx> amplitudes() const {
        return amplitudes_;
    }
    std::vector<cplx> &mutable_amplitudes() {
        return amplitudes_;
    }
    cplx operator[](std::size_t i) const {
        return amplitudes_[i];
    }

    double norm() const;
    /// Divides by the norm; throws std::domain_error for the zero vector.
    void normalize();

   private:
    std::shared_ptr<const Basis> basis_;
    std::vector<cplx> amplitudes_;
};

/// <a|b>. Requires the same basis object.
cplx inner_product(const StateVector &a, const StateVector &b);

/// Single-site spin-1/2 amplitudes on (up, down).
struct Spinor {
    cplx up;
    cplx down;
};

/// (|up> - |down>) / sqrt(2), the -1/2 eigenstate of S^x.
Spinor spin_left();
/// (|up> + |down>) / sqrt(2).
Spinor spin_right();

/// Product state with `sites[j]` on site j and a hole where it is nullopt.
/// Amplitudes are read off each basis configuration, so the result carries
/// no fermionic sign beyond the basis ordering convention. Throws
/// std::invalid_argument if the basis misses part of the product's support.
StateVector product_state(std::shared_ptr<const Basis> basis, const std::vector<std::optional<Spinor>> &sites);

/// |<-,<-,...>| with holes on `vacancies`.
StateVector spin_left_state(std::shared_ptr<const Basis> basis, const std::vector<std::size_t> &vacancies = {});

}  // namespace clusterlab

#endif  // CLUSTERLAB_STATE_H_
