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
 * Pure multimode Gaussian probes and their Husimi Q representation.
 *
 * A probe is a product of squeezed displaced states D(beta_k) S(xi_k)|0>,
 * xi_k = |xi_k| e^{i theta_k}, sent through a passive interferometer A^†.
 * With alpha' = A alpha the Q function of the probe is a complex Gaussian
 *
 *     Q(r) = F exp(-r^† M r + (r_b^† r + r^† r_b)/2) / (pi^{n} prod_k cosh|xi_k|),
 *     r = (alpha, alpha^*),  r_b = (b, b^*),
 *     M = 1/2 (I, N; N^†, I),  N = A^† D A^*,  D = diag(e^{i theta_k} tanh|xi_k|),
 *     M^-1 = 2 (E, -N E^T; -N^† E, E^T),  E = A^† C A,  C = diag(cosh^2|xi_k|),
 *     b_j = sum_k A^*_{kj} (beta_k + beta_k^* e^{i theta_k} tanh|xi_k|).
 *
 * The mean of alpha under Q is gamma = E b - E N b^*, which equals A^† beta.
 */

#pragma once

#include <vector>

#include "qfimkit/matrixkit.hpp"

namespace qfimkit {

/// Largest squeezing magnitude accepted; keeps sinh/cosh far from overflow.
inline constexpr double kMaxSqueezing = 20.0;

/// Parameters of one input mode |beta; xi>.
struct ModeParams {
    cplx beta{0.0, 0.0};
    double xi_mag = 0.0;
    double theta = 0.0;

    /// Mean photon number |beta|^2 + sinh^2|xi|.
    double energy() const;
    /// Throws DomainError on negative, oversized or non-finite parameters.
    void validate() const;
};

/// Passive linear interferometer matrix A (unitary).
class PassiveUnitary {
   public:
    /// Throws DomainError if `a` is not unitary within kStructuralTol.
    explicit PassiveUnitary(ComplexMatrix a);

    static PassiveUnitary identity(Index n);
    /// Real special-orthogonal interferometer; throws DomainError if det != +1.
    static PassiveUnitary orthogonal(const Eigen::MatrixXd &o);

    Index dim() const noexcept { return matrix_.rows(); }
    const ComplexMatrix &matrix() const noexcept { return matrix_; }
    /// Real entries (within 1e-12) and determinant +1 (within 1e-10).
    bool is_orthogonal() const noexcept { return orthogonal_; }

   private:
    ComplexMatrix matrix_;
    bool orthogonal_ = false;
};

class ProbeSpec {
   public:
    /// Needs at least two modes and one interferometer row per mode.
    ProbeSpec(std::vector<ModeParams> modes, PassiveUnitary interferometer);

    /// d+1 modes with the same real squeezing and no displacement.
    static ProbeSpec equal_squeezing(Index phases, double xi_mag, const PassiveUnitary &interferometer);

    const std::vector<ModeParams> &modes() const noexcept { return modes_; }
    const PassiveUnitary &interferometer() const noexcept { return interferometer_; }
    Index mode_count() const noexcept { return static_cast<Index>(modes_.size()); }
    /// Number of estimated phases d = modes - 1.
    Index phase_count() const noexcept { return mode_count() - 1; }

    /// Input displacements beta_k as a vector.
    CVector displacements() const;
    /// Mean of the output annihilation operators, A^† beta.
    CVector output_displacements() const;

   private:
    std::vector<ModeParams> modes_;
    PassiveUnitary interferometer_;
};

struct QMatrices {
    ComplexMatrix n_mat;  ///< N, symmetric
    ComplexMatrix e_mat;  ///< E, Hermitian
    ComplexMatrix m_mat;  ///< M
    ComplexMatrix m_inv;  ///< M^-1 in the closed E-form
    CVector b_vec;
    CVector gamma_vec;    ///< mean of alpha under Q
    cplx f_norm;          ///< F(beta, beta^*)
    double cosh_product = 1.0;

    Index mode_count() const noexcept { return n_mat.rows(); }
};

/// Throws NumericalConsistencyError if any structural invariant of the result fails.
QMatrices build_q_matrices(const ProbeSpec &probe);

/// Mean photon number summed over all modes; invariant under the interferometer.
double total_energy(const ProbeSpec &probe);

/// Q(alpha) = |<alpha|Psi>|^2 / pi^{d+1}.
double q_function_value(const ProbeSpec &probe, const CVector &alpha);
double q_function_value(const QMatrices &q, const CVector &alpha);

}  // namespace qfimkit
