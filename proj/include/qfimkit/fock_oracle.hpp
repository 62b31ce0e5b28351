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
 * Brute-force Fock-space reference for the Gaussian closed forms.
 *
 * Nothing here uses the Q-representation matrices. Single-mode states are
 * synthesized from their number-basis amplitudes; multimode photon moments are
 * obtained either by contracting single-mode moment tables through the linear
 * map a_out = A^† a_in (cheap, any mode count), or from a fully materialized
 * multimode state with a total-photon cutoff (small mode counts only).
 */

#pragma once

#include <optional>
#include <vector>

#include "qfimkit/gaussian_state.hpp"
#include "qfimkit/qfim.hpp"

namespace qfimkit {

/// Allowed loss of squared norm per mode.
inline constexpr double kTruncationBudget = 1e-12;

struct FockVector {
    Index cutoff = 0;    ///< highest photon number kept
    CVector amplitudes;  ///< <n|psi>, n = 0..cutoff

    double norm_squared() const { return amplitudes.squaredNorm(); }
};

/// max(32, ceil(12 (|beta|^2 + sinh^2|xi| + 1))).
/// max(32, ceil(12 (E + 1))), raised until the squared norm reaches 1 - budget.
Index auto_cutoff(const ModeParams &mode, double budget = kTruncationBudget);

/**
 * <n| D(beta) S(xi) |0> for n = 0..cutoff, with S(xi) = exp((xi^* a^2 - xi a^†2) / 2).
 *
 * Uses the Hermite three-term recurrence folded into the amplitudes,
 *
 *     c_0     = exp(-|beta|^2/2 - beta^*2 s/2) / sqrt(cosh|xi|),   s = e^{i theta} tanh|xi|,
 *     c_{n+1} = ((beta + beta^* s) c_n - s sqrt(n) c_{n-1}) / sqrt(n+1),
 *
 * which avoids factorials. Throws CutoffTooSmall if 1 - ||c||^2 exceeds `budget`.
 */
FockVector squeezed_displaced_amplitudes(const ModeParams &mode, Index cutoff,
                                         double budget = kTruncationBudget);

/// Rotates a single mode, <n|psi> -> e^{i n phase} <n|psi>.
FockVector apply_phase(const FockVector &state, double phase);

/// Antinormally ordered single-mode moments <a^p a^†q>, p, q in {0, 1, 2}.
class MomentTable {
   public:
    static MomentTable from_amplitudes(const FockVector &state);

    cplx at(int p, int q) const { return values_[static_cast<std::size_t>(3 * p + q)]; }

   private:
    std::vector<cplx> values_ = std::vector<cplx>(9);
};

/// Moments of a product input state together with the output mode map a_out = U a_in.
struct ProbeMoments {
    std::vector<MomentTable> tables;
    Eigen::MatrixXcd output_map;

    Index mode_count() const noexcept { return static_cast<Index>(tables.size()); }
};

/// Per-mode cutoff defaults to twice auto_cutoff for each mode.
ProbeMoments probe_moments(const ProbeSpec &probe, std::optional<Index> cutoff = std::nullopt);

/**
 * exp(i sum_i phi_i (n_i - n_0)): output mode i picks up e^{i phi_i}, mode 0 picks up
 * e^{-i sum phi}. `phases` has length d.
 */
ProbeMoments apply_phases(const ProbeMoments &moments, const RVector &phases);

/// Cov(n_i, n_j) by contraction of single-mode tables, raw convention.
CovMatrixH contracted_moments(const ProbeMoments &moments);
CovMatrixH contracted_moments(const ProbeSpec &probe, std::optional<Index> cutoff = std::nullopt);

/// Mean photon numbers <n_i> of the output modes by contraction.
RVector contracted_means(const ProbeMoments &moments);

/// Pure multimode state truncated to total photon number <= total_cutoff.
class MultimodeFockState {
   public:
    /// Throws CutoffTooSmall if the truncated squared norm is below 1 - budget, and
    /// DomainError if the basis would exceed `max_dim` states.
    static MultimodeFockState from_probe(const ProbeSpec &probe, Index total_cutoff, double budget = 1e-10,
                                         Index max_dim = 4'000'000);

    Index mode_count() const noexcept { return modes_; }
    Index total_cutoff() const noexcept { return total_cutoff_; }
    Index dim() const noexcept { return amplitudes_.size(); }
    const CVector &amplitudes() const noexcept { return amplitudes_; }
    /// Occupation of `mode` in basis state `index`.
    int occupation(Index index, Index mode) const {
        return occupations_[static_cast<std::size_t>(index * modes_ + mode)];
    }
    double norm_squared() const { return amplitudes_.squaredNorm(); }

    MultimodeFockState normalized() const;
    MultimodeFockState with_phases(const RVector &phases) const;

    CovMatrixH covariances() const;
    /// <alpha|Psi> for a multimode coherent state.
    cplx coherent_overlap(const CVector &alpha) const;
    /// psi -> g_i psi with g_i = n_i - n_0 (diagonal in this basis), i = 1..d.
    CVector apply_generator(Index i, const CVector &psi) const;

   private:
    Index modes_ = 0;
    Index total_cutoff_ = 0;
    std::vector<int> occupations_;
    CVector amplitudes_;
};

/// max(32, ceil(12 (E_total + 1))).
/// Same rule on the total photon number, raised until the truncated norm reaches 1 - budget.
Index auto_total_cutoff(const ProbeSpec &probe, double budget = 1e-10);

/**
 * |<Phi| [L_i, L_j] |Phi>| on the truncated, renormalized state Phi = U_phi Psi, with the
 * pure-state SLDs L_k = 2i [g_k, |Phi><Phi|] applied as operators. i, j are phase
 * indices in 1..d; i == j returns exactly 0.
 */
double attainability_check(const ProbeSpec &probe, const RVector &phases, Index i, Index j,
                           std::optional<Index> total_cutoff = std::nullopt);

}  // namespace qfimkit
