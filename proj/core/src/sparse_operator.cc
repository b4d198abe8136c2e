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

#include "clusterlab/sparse_operator.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace clusterlab {

SparseHermitianOperator::SparseHermitianOperator(
    std::shared_ptr<const Basis> basis,
    std::vector<std::size_t> row_offsets,
    std::vector<std::uint32_t> columns,
    std::vector<double> values)
    : basis_(std::move(basis)),
      row_offsets_(std::move(row_offsets)),
      columns_(std::move(columns)),
      values_(std::move(values)) {
    if (!basis_) {
        throw std::invalid_argument("operator requires a basis");
    }
    if (row_offsets_.size() != basis_->dimension() + 1 || row_offsets_.front() != 0 ||
        row_offsets_.back() != values_.size() || columns_.size() != values_.size()) {
        throw std::invalid_argument("inconsistent CSR arrays");
    }
    const std::size_t dim = dimension();
    for (std::size_t r = 0; r < dim; ++r) {
        double row_sum = 0.0;
        for (std::size_t p = row_offsets_[r]; p < row_offsets_[r + 1]; ++p) {
            if (columns_[p] >= dim) {
                throw std::out_of_range("CSR column out of range");
            }
            if (columns_[p] != r) {
                diagonal_only_ = false;
            }
            row_sum += std::abs(values_[p]);
        }
        norm_bound_ = std::max(norm_bound_, row_sum);
    }
}

void SparseHermitianOperator::apply(std::span<const cplx> in, std::span<cplx> out) const {
    const std::size_t dim = dimension();
    if (in.size() != dim || out.size() != dim) {
        throw std::invalid_argument("apply: vector length does not match operator dimension");
    }
    const std::size_t *offsets = row_offsets_.data();
    const std::uint32_t *cols = columns_.data();
    const double *vals = values_.data();
    const cplx *x = in.data();
    for (std::size_t r = 0; r < dim; ++r) {
        double re = 0.0;
        double im = 0.0;
        for (std::size_t p = offsets[r]; p < offsets[r + 1]; ++p) {
            const cplx v = x[cols[p]];
            re += vals[p] * v.real();
            im += vals[p] * v.imag();
        }
        out[r] = cplx(re, im);
    }
}

double SparseHermitianOperator::element(std::size_t row, std::size_t col) const {
    if (row >= dimension() || col >= dimension()) {
        throw std::out_of_range("element index out of range");
    }
    auto begin = columns_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[row]);
    auto end = columns_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[row + 1]);
    auto it = std::lower_bound(begin, end, static_cast<std::uint32_t>(col));
    if (it == end || *it != col) {
        return 0.0;
    }
    return values_[static_cast<std::size_t>(it - columns_.begin())];
}

std::vector<double> SparseHermitianOperator::diagonal() const {
    std::vector<double> d(dimension(), 0.0);
    for (std::size_t r = 0; r < dimension(); ++r) {
        d[r] = element(r, r);
    }
    return d;
}

double SparseHermitianOperator::hermiticity_error() const {
    double scale = 0.0;
    double worst = 0.0;
    for (std::size_t r = 0; r < dimension(); ++r) {
        for (std::size_t p = row_offsets_[r]; p < row_offsets_[r + 1]; ++p) {
            scale = std::max(scale, std::abs(values_[p]));
            worst = std::max(worst, std::abs(values_[p] - element(columns_[p], r)));
        }
    }
    return scale == 0.0 ? 0.0 : worst / scale;
}

Eigen::MatrixXd SparseHermitianOperator::to_dense() const {
    if (dimension() > kMaxDenseDimension) {
        throw std::length_error(
            "dense materialization is limited to dimension " + std::to_string(kMaxDenseDimension) + ", got " +
            std::to_string(dimension()));
    }
    const auto n = static_cast<Eigen::Index>(dimension());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t r = 0; r < dimension(); ++r) {
        for (std::size_t p = row_offsets_[r]; p < row_offsets_[r + 1]; ++p) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(columns_[p])) += values_[p];
        }
    }
    return m;
}

// ---------------------------------------------------------------------------

OperatorAssembler::OperatorAssembler(std::shared_ptr<const Basis> basis) : basis_(std::move(basis)) {
    if (!basis_) {
        throw std::invalid_argument("assembler requires a basis");
    }
    if (basis_->dimension() > 0xFFFFFFFFull) {
        throw std::length_error("basis too large for 32-bit column indices");
    }
    row_offsets_.reserve(basis_->dimension() + 1);
    row_offsets_.push_back(0);
}

void OperatorAssembler::begin_row(std::size_t row) {
    if (row_open_) {
        flush_row();
    }
    // Rows that were skipped are empty.
    while (row_offsets_.size() < row + 1) {
        row_offsets_.push_back(values_.size());
    }
    if (row_offsets_.size() != row + 1) {
        throw std::logic_error("rows must be assembled in ascending order");
    }
    current_row_ = row;
    row_open_ = true;
}

void OperatorAssembler::add(std::size_t col, double value) {
    if (!row_open_) {
        throw std::logic_error("add() before begin_row()");
    }
    if (col >= basis_->dimension()) {
        throw std::out_of_range("column " + std::to_string(col) + " out of range");
    }
    pending_.emplace_back(static_cast<std::uint32_t>(col), value);
}

void OperatorAssembler::flush_row() {
    std::sort(pending_.begin(), pending_.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    for (std::size_t i = 0; i < pending_.size();) {
        std::uint32_t col = pending_[i].first;
        double sum = 0.0;
        for (; i < pending_.size() && pending_[i].first == col; ++i) {
            sum += pending_[i].second;
        }
        if (sum != 0.0) {
            columns_.push_back(col);
            values_.push_back(sum);
        }
    }
    pending_.clear();
    row_offsets_.push_back(values_.size());
    row_open_ = false;
}

SparseHermitianOperator OperatorAssembler::finish() && {
    if (row_open_) {
        flush_row();
    }
    while (row_offsets_.size() < basis_->dimension() + 1) {
        row_offsets_.push_back(values_.size());
    }
    return SparseHermitianOperator(basis_, std::move(row_offsets_), std::move(columns_), std::move(values_));
}

}  // namespace clusterlab
