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

#ifndef CLUSTERLAB_MODEL_H_
#define CLUSTERLAB_MODEL_H_

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string_view>
#include <tuple>
#include <vector>

#include "clusterlab/basis.h"
#include "clusterlab/hamiltonian.h"
#include "clusterlab/lattice.h"
#include "clusterlab/sparse_operator.h"
#include "clusterlab/state.h"

namespace clusterlab {

enum class ModelKind {
    kFermiHubbardGauged,
    kFermiHubbardLiteral,
    kSuperexchange,
    kSuperexchangeZzOnly,
    kSpin1,
    kIsing,
};

std::string_view to_string(ModelKind kind);
std::optional<ModelKind> parse_model_kind(std::string_view name);

/// Size of the basis and of the stored operator, computed without
/// enumerating anything. The nonzero count is exact on average for the
/// spin-1/2 kinds and an upper bound otherwise.
struct SizeEstimate {
    std::uint64_t dimension = 0;
    std::uint64_t nonzeros = 0;
};

/// One model Hamiltonian family on a fixed lattice and particle content.
///
/// The basis is chosen from the kind and the vacancy count: a Fock basis at
/// N = L - holes for the Fermi-Hubbard kinds, the spin-1/2 basis for the
/// spin models (no vacancies allowed), and the spin-1 basis restricted to
/// the hole count. Hamiltonians are built lazily per parameter set and
/// cached; a Model may be shared across threads.
class Model {
   public:
    Model(ModelKind kind, LatticeGeometry geometry, std::vector<std::size_t> vacancies = {});

    static SizeEstimate estimate(ModelKind kind, const LatticeGeometry &geometry, std::size_t holes);

    ModelKind kind() const {
        return kind_;
    }
    const LatticeGeometry &geometry() const {
        return geometry_;
    }
    const std::vector<std::size_t> &vacancies() const {
        return vacancies_;
    }
    const std::shared_ptr<const Basis> &basis() const {
        return basis_;
    }

    std::shared_ptr<const SparseHermitianOperator> hamiltonian(const HubbardParams &params) const;

    /// |<-> on every occupied site, holes on the vacancies.
    StateVector initial_state() const;

   private:
    ModelKind kind_;
    LatticeGeometry geometry_;
    std::vector<std::size_t> vacancies_;
    std::shared_ptr<const Basis> basis_;

    mutable std::mutex mutex_;
    mutable std::map<std::tuple<double, double, double>, std::shared_ptr<const SparseHermitianOperator>> cache_;
};

}  // namespace clusterlab

#endif  // CLUSTERLAB_MODEL_H_
