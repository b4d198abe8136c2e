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

#ifndef CLUSTERLAB_SPARSE_OPERATOR_H_
#define CLUSTERLAB_SPARSE_OPERATOR_H_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "clusterlab/basis.h"

namespace clusterlab {

using cplx = std::complex<double>;

/// Sparse Hermitian operator over an enumerated basis, stored as CSR.
///
/// Every model Hamiltonian in this library is real in the occupation basis,
/// so the values are stored as doubles; Hermitian then means symmetric.
/// Instances are immutable, and apply() may run concurrently from any
/// number of threads. Each output row is summed in a fixed order, so
/// results do not depend on scheduling.
class SparseHermitianOperator {
   public:
    SparseHermitianOperator(
        std::shared_ptr<const Basis> basis,
        std::vector<std::size_t> row_offsets,
        std::vector<std::uint32_t> columns,
        std::vector<double> values);

    const Basis &basis() const {
        return *basis_;
    }
    const std::shared_ptr<const Basis> &basis_ptr() const {
        return basis_;
    }
    std::size_t dimension() const {
        return row_offsets_.size() - 1;
    }
    std::size_t nonzeros() const {
        return values_.size();
    }
    bool is_diagonal() const {
        return diagonal_only_;
    }

    /// out = H * in.
    void apply(std::span<const cplx> in, std::span<cplx> out) const;

    double element(std::size_t row, std::size_t col) const;
    std::vector<double> diagonal() const;

    /// Gershgorin bound on the spectral radius.
    double norm_bound() const {
        return norm_bound_;
    }
    /// max |H_ij - H_ji| divided by max |H_ij| (0 for the zero operator).
    double hermiticity_error() const;

    /// Dense copy; permitted only up to kMaxDenseDimension.
    Eigen::MatrixXd to_dense() const;
    static constexpr std::size_t kMaxDenseDimension = 4096;

    std::span<const std::size_t> row_offsets() const {
        return row_offsets_;
    }
    std::span<const std::uint32_t> columns() const {
        return columns_;
    }
    std::span<const double> values() const {
        return values_;
    }

   private:
    std::shared_ptr<const Basis> basis_;
    std::vector<std::size_t> row_offsets_;
    std::vector<std::uint32_t> columns_;
    std::vector<double> values_;
    bool diagonal_only_ = true;
    double norm_bound_ = 0.0;
};

/// Row-by-row assembly. Rows must be started in ascending order; entries
/// within a row may repeat and are summed.
class OperatorAssembler {
   public:
    explicit OperatorAssembler(std::shared_ptr<const Basis> basis);

    void begin_row(std::size_t row);
    void add(std::size_t col, double value);
    SparseHermitianOperator finish() &&;

   private:
    void flush_row();

    std::shared_ptr<const Basis> basis_;
    std::size_t current_row_ = 0;
    bool row_open_ = false;
    std::vector<std::pair<std::uint32_t, double>> pending_;
    std::vector<std::size_t> row_offsets_;
    std::vector<std::uint32_t> columns_;
    std::vector<double> values_;
};

}  // namespace clusterlab

#endif  // CLUSTERLAB_SPARSE_OPERATOR_H_
