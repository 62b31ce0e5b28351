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
 * Energy allocation for equal-squeezing probes, the optimal simultaneous QFIM and the
 * simultaneous-versus-individual ratio.
 */

#pragma once

#include <vector>

#include "qfimkit/qfim.hpp"

namespace qfimkit {

struct EnergyBudget {
    double e_total = 0.0;  ///< mean photon number summed over all d+1 modes
    Index d = 1;           ///< number of phases

    /// Throws DomainError unless e_total is finite and non-negative and d >= 1.
    void validate() const;
};

inline constexpr Index kGridDisplacementPoints = 101;
inline constexpr Index kGridAnglePoints = 64;

/// Grid search over (E_gamma, theta_gamma) for one mode.
struct GridEvidence {
    double endpoint_h = 0.0;           ///< h at E_gamma = 0
    double best_h = 0.0;               ///< best h over points with E_gamma > 0
    double best_e_gamma = 0.0;
    double best_theta = 0.0;
    bool interior_beats_endpoint = false;
};

struct AllocationResult {
    RVector per_mode_energy;        ///< E_j, j = 0..d
    RVector displacement_fraction;  ///< E_gamma_j / E_j
    RVector displacement_angle;     ///< theta_gamma_j
    RVector h_diag;                 ///< h_jj at the chosen allocation, scaled convention
    double objective = 0.0;         ///< Tr H^-1, +inf without resources
    std::vector<GridEvidence> grid;
};

/**
 * Photon-number variance (times four) of one mode carrying energy E, of which E_gamma sits
 * in the displacement at angle theta_gamma:
 *
 *     h = 4(-E_gamma + 2E(1 + E - E_gamma)) + 8 E_gamma sqrt((E - E_gamma)(1 + E - E_gamma)) cos 2theta_gamma
 */
double h_of_allocation(double e_j, double e_gamma, double theta_gamma);

GridEvidence grid_search_mode(double e_j, Index displacement_points = kGridDisplacementPoints,
                              Index angle_points = kGridAnglePoints);

/// Equal split, all energy in squeezing; the grid evidence is always computed.
AllocationResult optimize_allocation(const EnergyBudget &budget);

/// 2 sinh^2(2|xi|) with sinh^2|xi| = E/(d+1).
double h_sim_factor_squeezing(const EnergyBudget &budget);
/// 8 E (d+1+E) / (d+1)^2.
double h_sim_factor_energy(const EnergyBudget &budget);

/// f (I + u u^T); throws NumericalConsistencyError if the two factor forms disagree beyond 1e-10.
Qfim h_sim(const EnergyBudget &budget);

/// d independent two-mode interferometers sharing the budget equally.
struct IndividualQfim {
    Index d = 1;
    double xi_prime = 0.0;    ///< sinh^2 xi' = E / (2d)
    double per_phase = 0.0;   ///< 4 sinh^2(2 xi')

    double trace_inverse() const;
    Qfim as_qfim() const;
};

IndividualQfim individual_strategy_qfim(const EnergyBudget &budget);

/// 1 - (d-1)/(2d) tanh^2|xi| without the cross-check.
double ratio_r_closed_form(Index d, double xi_mag);

/**
 * 1 - (d-1)/(2d) tanh^2|xi|, where xi is the squeezing of the simultaneous probe. For
 * xi > 0 the trace ratio at matched energy is also evaluated; a disagreement beyond 1e-9
 * throws NumericalConsistencyError.
 */
double ratio_r(Index d, double xi_mag);
/// Tr H_sim^-1 / Tr H_ind^-1 at E = (d+1) sinh^2|xi|; needs xi > 0.
double ratio_r_first_principles(Index d, double xi_mag);
/// 1 - tanh^2|xi| / 2.
double ratio_r_limit(double xi_mag);

/// dB = 10 log10 e^{2|xi|}.
double db_to_xi(double db);
double xi_to_db(double xi_mag);

}  // namespace qfimkit
