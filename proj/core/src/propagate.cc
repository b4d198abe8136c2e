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

#include "clusterlab/propagate.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "clusterlab/errors.h"

namespace clusterlab {

namespace {

double norm2(const std::vector<cplx> &a) {
    double s = 0.0;
    for (const cplx &x : a) {
        s += std::norm(x);
    }
    return std::sqrt(s);
}

void diagonal_phases(const SparseHermitianOperator &h, std::vector<cplx> &psi, double t) {
    const std::vector<double> e = h.diagonal();
    for (std::size_t i = 0; i < psi.size(); ++i) {
        psi[i] *= std::polar(1.0, -e[i] * t);
    }
}

constexpr int kErrorSamples = 8;
constexpr double kRoundingFloor = 64 * std::numeric_limits<double>::epsilon();

std::size_t effective_krylov_dimension(const PropagationOptions &o, std::size_t dim) {
    const std::size_t by_memory = o.krylov_memory_bytes / std::max<std::size_t>(1, dim * sizeof(cplx));
    std::size_t m = std::min(o.krylov_dimension, std::max<std::size_t>(by_memory, 8));
    return std::max<std::size_t>(2, std::min(m, dim));
}

}  // namespace

PropagationReport propagate_in_place(
    const SparseHermitianOperator &hamiltonian,
    std::vector<cplx> &psi,
    double t,
    const PropagationOptions &options) {
    const std::size_t dim = hamiltonian.dimension();
    if (psi.size() != dim) {
        throw std::invalid_argument("propagate: state dimension does not match the operator");
    }
    if (!std::isfinite(t)) {
        throw std::invalid_argument("propagate: time must be finite");
    }
    if (!(options.tolerance > 0.0)) {
        throw std::invalid_argument("propagate: tolerance must be positive");
    }
    PropagationReport report;
    if (t == 0.0 || dim == 0) {
        return report;
    }
    if (hamiltonian.is_diagonal()) {
        diagonal_phases(hamiltonian, psi, t);
        report.steps = 1;
        return report;
    }

    const double total = std::abs(t);
    const double direction = t > 0 ? 1.0 : -1.0;
    const std::size_t m_max = effective_krylov_dimension(options, dim);
    // Krylov basis, one column per vector.
    Eigen::MatrixXcd v(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(m_max + 1));
    auto column = [&](std::size_t k) { return std::span<cplx>(v.col(static_cast<Eigen::Index>(k)).data(), dim); };
    Eigen::Map<Eigen::VectorXcd> psi_map(psi.data(), static_cast<Eigen::Index>(dim));
    std::vector<double> alpha(m_max);
    std::vector<double> beta(m_max);
    // Guess from the spectral bound; refined from the accepted step sizes.
    double tau_guess = std::min(total, 10.0 / std::max(hamiltonian.norm_bound(), 1e-300));
    double elapsed = 0.0;

    while (elapsed < total) {
        if (report.steps >= options.max_steps) {
            throw ConvergenceError(
                "propagation exceeded " + std::to_string(options.max_steps) + " Krylov steps",
                report.error_estimate);
        }
        const double remaining = total - elapsed;
        const double psi_norm = norm2(psi);
        if (psi_norm == 0.0) {
            break;
        }
        v.col(0) = psi_map / psi_norm;

        // Lanczos with full reorthogonalization.
        std::size_t m = m_max;
        bool invariant = false;
        double beta_last = 0.0;
        for (std::size_t k = 0; k < m_max; ++k) {
            hamiltonian.apply(column(k), column(k + 1));
            ++report.matvecs;
            auto w = v.col(static_cast<Eigen::Index>(k + 1));
            const auto basis = v.leftCols(static_cast<Eigen::Index>(k + 1));
            // Classical Gram-Schmidt, repeated when the first pass cancelled
            // more than 1 - 1/sqrt(2) of the norm (the DGKS criterion).
            double before = w.norm();
            double b = 0.0;
            for (int pass = 0; pass < 2; ++pass) {
                const Eigen::VectorXcd c = basis.adjoint() * w;
                if (pass == 0) {
                    alpha[k] = c(static_cast<Eigen::Index>(k)).real();
                }
                w.noalias() -= basis * c;
                b = w.norm();
                if (b > std::numbers::sqrt2 / 2 * before) {
                    break;
                }
                before = b;
            }
            const double scale = std::max(std::abs(alpha[k]), hamiltonian.norm_bound());
            if (b <= 1e-13 * std::max(scale, 1e-300)) {
                m = k + 1;
                invariant = true;
                break;
            }
            w /= b;
            if (k + 1 < m_max) {
                beta[k] = b;
            }
            beta_last = b;
        }

        Eigen::VectorXd diag(static_cast<Eigen::Index>(m));
        Eigen::VectorXd sub(static_cast<Eigen::Index>(std::max<std::size_t>(m, 2) - 1));
        for (std::size_t k = 0; k < m; ++k) {
            diag(static_cast<Eigen::Index>(k)) = alpha[k];
            if (k + 1 < m) {
                sub(static_cast<Eigen::Index>(k)) = beta[k];
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
        if (m == 1) {
            eig.compute(Eigen::MatrixXd::Constant(1, 1, alpha[0]));
        } else {
            eig.computeFromTridiagonal(diag, sub.head(static_cast<Eigen::Index>(m - 1)));
            if (eig.info() != Eigen::Success) {
                // The implicit QR sweep occasionally stalls after a near
                // breakdown; the dense path reduces T by Householder first.
                Eigen::MatrixXd t_dense = Eigen::MatrixXd::Zero(diag.size(), diag.size());
                t_dense.diagonal() = diag;
                t_dense.diagonal(1) = sub.head(static_cast<Eigen::Index>(m - 1));
                t_dense.diagonal(-1) = sub.head(static_cast<Eigen::Index>(m - 1));
                eig.compute(t_dense);
            }
        }
        if (eig.info() != Eigen::Success) {
            throw ConvergenceError("Krylov eigensolver did not converge", report.error_estimate);
        }
        const Eigen::MatrixXd &q = eig.eigenvectors();
        const Eigen::VectorXd &lambda = eig.eigenvalues();

        auto coefficients = [&](double tau) {
            Eigen::VectorXcd y = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(m));
            for (Eigen::Index r = 0; r < static_cast<Eigen::Index>(m); ++r) {
                const cplx phase = std::polar(1.0, -direction * lambda(r) * tau) * q(0, r);
                y += phase * q.col(r).cast<cplx>();
            }
            return y;
        };

        // The Lanczos relation bounds the step error by
        //   beta_m * int_0^tau |[exp(-i s T) e_1]_m| ds * |psi|.
        // The integrand is sampled on a uniform grid so that an accidental
        // zero of the last coefficient at s = tau cannot hide the error.
        auto step_error = [&](double tau) {
            double peak = 0.0;
            for (int k = 1; k <= kErrorSamples; ++k) {
                const Eigen::VectorXcd ys = coefficients(tau * k / kErrorSamples);
                peak = std::max(peak, std::abs(ys(static_cast<Eigen::Index>(m - 1))));
            }
            return beta_last * tau * peak * psi_norm;
        };

        double tau = invariant ? remaining : std::min(remaining, tau_guess);
        double err = 0.0;
        for (;;) {
            err = invariant ? 0.0 : step_error(tau);
            const double allowed = options.tolerance * tau / total;
            // Below the rounding level of the Krylov coefficients the estimate
            // carries no information; such steps are accepted.
            const double floor = kRoundingFloor * beta_last * tau * psi_norm;
            if (err <= std::max(allowed, floor)) {
                break;
            }
            // The error grows roughly like tau^(m+1).
            const double ratio = std::pow(allowed / err, 1.0 / static_cast<double>(m + 1));
            tau *= std::clamp(0.9 * ratio, 0.1, 0.9);
            if (!(tau > total * 1e-14)) {
                throw ConvergenceError("Krylov step size underflow", err);
            }
        }
        const Eigen::VectorXcd y = coefficients(tau);

        psi_map.noalias() = v.leftCols(static_cast<Eigen::Index>(m)) * (y * psi_norm);
        elapsed = (remaining - tau <= 1e-15 * total) ? total : elapsed + tau;
        report.error_estimate += err;
        ++report.steps;
        tau_guess = std::min(total, 1.5 * tau);
    }
    return report;
}

StateVector propagate(
    const SparseHermitianOperator &hamiltonian,
    const StateVector &psi,
    double t,
    const PropagationOptions &options,
    PropagationReport *report) {
    if (hamiltonian.basis_ptr() != psi.basis_ptr() &&
        (hamiltonian.dimension() != psi.dimension() || hamiltonian.basis().kind() != psi.basis().kind())) {
        throw std::invalid_argument("propagate: state and operator live on different bases");
    }
    std::vector<cplx> amps(psi.amplitudes().begin(), psi.amplitudes().end());
    PropagationReport r = propagate_in_place(hamiltonian, amps, t, options);
    if (report) {
        *report = r;
    }
    return StateVector(psi.basis_ptr(), std::move(amps));
}

}  // namespace clusterlab
