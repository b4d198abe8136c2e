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

#ifndef CLUSTERLAB_PROPAGATE_H_
#define CLUSTERLAB_PROPAGATE_H_

#include <cstddef>
#include <vector>

#include "clusterlab/sparse_operator.h"
#include "clusterlab/state.h"

namespace clusterlab {

struct PropagationOptions {
    /// Target bound on the accumulated error norm over the full interval.
    double tolerance = 1e-10;
    /// Largest Krylov subspace; reduced automatically for very large bases.
    std::size_t krylov_dimension = 30;
    /// Budget for Krylov vector storage, in bytes.
    std::size_t krylov_memory_bytes = std::size_t{1} << 29;
    std::size_t max_steps = 100000;
};

struct PropagationReport {
    std::size_t steps = 0;
    std::size_t matvecs = 0;
    /// Sum of the per-step a posteriori error estimates.
    double error_estimate = 0.0;
};

/// psi <- exp(-i H t) psi by adaptive Lanczos steps with full
/// reorthogonalization. Each step of length tau is accepted once
/// beta_m tau max_{s <= tau} |[exp(-i s T) e_1]_m| |psi| <= tolerance * tau / |t|,
/// or once that estimate falls to the rounding level. Diagonal
/// operators take exact phases. Throws ConvergenceError when the step
/// budget runs out or the step size underflows.
PropagationReport propagate_in_place(
    const SparseHermitianOperator &hamiltonian,
    std::vector<cplx> &psi,
    double t,
    const PropagationOptions &options = {});

StateVector propagate(
    const SparseHermitianOperator &hamiltonian,
    const StateVector &psi,
    double t,
    const PropagationOptions &options = {},
    PropagationReport *report = nullptr);

}  // namespace clusterlab

#endif  // CLUSTERLAB_PROPAGATE_H_
