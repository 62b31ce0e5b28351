// Copyright 2026 The qfimkit Authors
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

/**
 * @file
 * Photon-number covariances, the phase QFIM built from them, and the trace of its inverse.
 *
 * The QFIM of d phases imprinted by the generators g_i = n_i - n_0 on a pure probe is
 *
 *     H_ij = 4 (h_ij - h_i0 - h_0j + h_00),   h_ij = Cov(n_i, n_j),   i, j = 1..d.
 *
 * The symbol h is used with two normalizations in the literature: the raw covariance
 * above, and a form that absorbs the factor 4 so that H = diag(h_11..h_dd) + h_00 u u^T
 * when the probe's covariance matrix is diagonal. CovMatrixH carries its convention
 * explicitly and StructuredQfim is always in the scaled form.
 */

#pragma once

#include <optional>

#include "qfimkit/gaussian_state.hpp"
#include "qfimkit/matrixkit.hpp"

namespace qfimkit {

enum class CovConvention { raw_covariance, scaled_by_four };

/// Threshold on off-diagonal residuals for recognising the diagonal plus rank-1 QFIM.
inline constexpr double kStructureTol = 1e-9;

/// Imaginary residue above which the closed-form covariance is rejected.
inline constexpr double kMaxImagResidue = 1e-8;

class CovMatrixH {
   public:
    CovMatrixH(RealSymmetricMatrix entries, CovConvention convention);

    const RealSymmetricMatrix &entries() const noexcept { return entries_; }
    CovConvention convention() const noexcept { return convention_; }
    Index dim() const noexcept { return entries_.dim(); }
    double operator()(Index i, Index j) const { return entries_(i, j); }

    CovMatrixH to_raw() const;
    CovMatrixH to_scaled() const;

   private:
    RealSymmetricMatrix entries_;
    CovConvention convention_;
};

/// H = diag(h_diag) + h00 u u^T, in the scaled_by_four convention.
struct StructuredQfim {
    RVector h_diag;  ///< modes 1..d
    double h00 = 0.0;
};

class Qfim {
   public:
    /// Throws DomainError if `dense` has an eigenvalue below -1e-9 (relative to its scale).
    explicit Qfim(RealSymmetricMatrix dense, std::optional<StructuredQfim> structured = std::nullopt);

    const RealSymmetricMatrix &dense() const noexcept { return dense_; }
    const std::optional<StructuredQfim> &structured() const noexcept { return structured_; }
    Index dim() const noexcept { return dense_.dim(); }

   private:
    RealSymmetricMatrix dense_;
    std::optional<StructuredQfim> structured_;
};

/**
 * Closed-form Cov(n_i, n_j) from the Q representation, raw convention.
 *
 * With P = E (covariance of alpha), S = -E N (pseudo-covariance) and gamma the mean,
 *
 *     h = (EN - gamma gamma^T) o (EN - gamma gamma^T)^* - (gamma gamma^T) o (gamma gamma^T)^*
 *         + E o (E^* + gamma^* gamma^T) + E^* o (gamma gamma^†) - I o (E + gamma gamma^†).
 *
 * Evaluated in complex arithmetic; throws NumericalConsistencyError if the imaginary
 * residue exceeds kMaxImagResidue (relative to the largest entry).
 */
CovMatrixH photon_covariances(const QMatrices &q);

/**
 * The Hadamard display for h as printed alongside the Q-representation derivation,
 * transcribed verbatim (4x the raw covariance, gamma = (2E^* - E^*N^* - N^*E) b / 2).
 * It agrees with photon_covariances only for real interferometers, theta = 0 and real
 * displacements; kept so that the discrepancy stays testable.
 */
ComplexMatrix printed_covariance_display(const QMatrices &q);

struct GeneratingFunctionMoments {
    double mean_i = 0.0;
    double mean_j = 0.0;
    double second_moment_ij = 0.0;  ///< <n_i n_j>

    double covariance() const { return second_moment_ij - mean_i * mean_j; }
};

/// Default central-difference step in the source variables.
inline constexpr double kGeneratingFunctionStep = 1e-2;

/// G(mu) = exp[(r_b^† M^-1 mu + mu^† M^-1 r_b + mu^† M^-1 mu) / 4] with mu = (lambda, lambda^*).
double generating_function(const QMatrices &q, const CVector &lambda);

/**
 * Photon moments from finite differences of the generating function.
 *
 * d/dlambda d/dlambda^* = (d^2/du^2 + d^2/dv^2) / 4 for lambda = u + iv; second and fourth
 * derivatives use nested central differences with one Richardson level (steps h and 2h).
 * Throws DomainError if `step` is below 1e-5, where round-off dominates fourth differences.
 */
GeneratingFunctionMoments moments_via_generating_function(const QMatrices &q, Index i, Index j,
                                                          double step = kGeneratingFunctionStep);

/// Dense H_ij = 4 (h_ij - h_i0 - h_0j + h_00); the structured form is attached when detected.
Qfim qfim_from_covariances(const CovMatrixH &h);

/// Tr(H^-1) using the diagonal plus rank-1 closed form when available, dense inversion otherwise.
double trace_inverse(const Qfim &qfim);
/// Tr(H^-1) by dense inversion only.
double trace_inverse_dense(const Qfim &qfim);
/// H^-1, by Sherman-Morrison when the structured form has positive entries.
RealSymmetricMatrix qfim_inverse(const Qfim &qfim);

/// Convenience: probe -> Q matrices -> covariances -> QFIM.
Qfim probe_qfim(const ProbeSpec &probe);

}  // namespace qfimkit
