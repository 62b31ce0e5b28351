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

#include "qfimkit/optimizer.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qfimkit/errors.hpp"

namespace qfimkit {

namespace {

constexpr double kFormTol = 1e-10;
constexpr double kRatioTol = 1e-9;

void check_xi(double xi_mag, const char *where) {
    if (!std::isfinite(xi_mag) || xi_mag < 0.0 || xi_mag > kMaxSqueezing) {
        throw DomainError(std::string(where) + ": squeezing must lie in [0, 20]");
    }
}

void check_d(Index d, const char *where) {
    if (d < 1) throw DomainError(std::string(where) + ": need d >= 1");
}

Qfim rank_one_qfim(Index d, double factor) {
    const Eigen::MatrixXd dense =
        factor * (Eigen::MatrixXd::Identity(d, d) + Eigen::MatrixXd::Ones(d, d));
    return Qfim(RealSymmetricMatrix(dense, kFormTol * std::max(1.0, factor)),
                StructuredQfim{RVector::Constant(d, factor), factor});
}

}  // namespace

void EnergyBudget::validate() const {
    if (!std::isfinite(e_total) || e_total < 0.0) {
        throw DomainError("EnergyBudget: e_total must be finite and non-negative");
    }
    check_d(d, "EnergyBudget");
}

double h_of_allocation(double e_j, double e_gamma, double theta_gamma) {
    if (!std::isfinite(e_j) || !std::isfinite(e_gamma) || !std::isfinite(theta_gamma)) {
        throw NonFiniteValue("h_of_allocation: non-finite argument");
    }
    if (e_gamma < 0.0 || e_gamma > e_j) {
        throw DomainError("h_of_allocation: need 0 <= e_gamma <= e_j");
    }
    const double sq = e_j - e_gamma;
    return 4.0 * (-e_gamma + 2.0 * e_j * (1.0 + sq)) +
           8.0 * e_gamma * std::sqrt(sq * (1.0 + sq)) * std::cos(2.0 * theta_gamma);
}

GridEvidence grid_search_mode(double e_j, Index displacement_points, Index angle_points) {
    if (displacement_points < 2 || angle_points < 1) {
        throw DomainError("grid_search_mode: grid too small");
    }
    GridEvidence ev;
    ev.endpoint_h = h_of_allocation(e_j, 0.0, 0.0);
    ev.best_h = -std::numeric_limits<double>::infinity();
    for (Index a = 1; a < displacement_points; ++a) {
        // the last point is pinned to e_j so rounding cannot step past it
        const double e_gamma =
            a + 1 == displacement_points ? e_j : e_j * static_cast<double>(a) / (displacement_points - 1);
        for (Index t = 0; t < angle_points; ++t) {
            const double theta = std::numbers::pi * static_cast<double>(t) / static_cast<double>(angle_points);
            const double h = h_of_allocation(e_j, e_gamma, theta);
            if (h > ev.best_h) {
                ev.best_h = h;
                ev.best_e_gamma = e_gamma;
                ev.best_theta = theta;
            }
        }
    }
    ev.interior_beats_endpoint = ev.best_h > ev.endpoint_h;
    return ev;
}

AllocationResult optimize_allocation(const EnergyBudget &budget) {
    budget.validate();
    const Index modes = budget.d + 1;
    const double e_j = budget.e_total / static_cast<double>(modes);

    AllocationResult out;
    out.per_mode_energy = RVector::Constant(modes, e_j);
    out.displacement_fraction = RVector::Zero(modes);
    out.displacement_angle = RVector::Zero(modes);
    out.h_diag = RVector::Constant(modes, h_of_allocation(e_j, 0.0, 0.0));
    // every mode carries the same energy, so one grid covers them all
    out.grid.assign(static_cast<std::size_t>(modes), grid_search_mode(e_j));

    if (budget.e_total == 0.0) {
        out.objective = std::numeric_limits<double>::infinity();
        return out;
    }
    const RVector phases_h = out.h_diag.tail(budget.d);
    const double h00 = out.h_diag(0);
    const Eigen::MatrixXd dense =
        Eigen::MatrixXd(phases_h.asDiagonal()) + h00 * Eigen::MatrixXd::Ones(budget.d, budget.d);
    out.objective = trace_inverse(Qfim(RealSymmetricMatrix(dense, kFormTol * std::max(1.0, h00)),
                                       StructuredQfim{phases_h, h00}));
    return out;
}

double h_sim_factor_squeezing(const EnergyBudget &budget) {
    budget.validate();
    const double s = budget.e_total / static_cast<double>(budget.d + 1);
    const double sinh_2xi = 2.0 * std::sqrt(s * (1.0 + s));
    return 2.0 * sinh_2xi * sinh_2xi;
}

double h_sim_factor_energy(const EnergyBudget &budget) {
    budget.validate();
    const double dp1 = static_cast<double>(budget.d + 1);
    return 8.0 * budget.e_total * (dp1 + budget.e_total) / (dp1 * dp1);
}

Qfim h_sim(const EnergyBudget &budget) {
    const double via_xi = h_sim_factor_squeezing(budget);
    const double via_energy = h_sim_factor_energy(budget);
    if (std::abs(via_xi - via_energy) > kFormTol * std::max(1.0, std::abs(via_energy))) {
        throw NumericalConsistencyError("h_sim: squeezing and energy forms disagree");
    }
    return rank_one_qfim(budget.d, via_energy);
}

double IndividualQfim::trace_inverse() const {
    if (per_phase <= 0.0) return std::numeric_limits<double>::infinity();
    return static_cast<double>(d) / per_phase;
}

Qfim IndividualQfim::as_qfim() const {
    return Qfim(RealSymmetricMatrix::from_diagonal(RVector::Constant(d, per_phase)),
                StructuredQfim{RVector::Constant(d, per_phase), 0.0});
}

IndividualQfim individual_strategy_qfim(const EnergyBudget &budget) {
    budget.validate();
    IndividualQfim out;
    out.d = budget.d;
    const double s = budget.e_total / (2.0 * static_cast<double>(budget.d));
    out.xi_prime = std::asinh(std::sqrt(s));
    // two-mode interferometer: 2 sinh^2(2 xi') (1 + 1)
    out.per_phase = 4.0 * (4.0 * s * (1.0 + s));
    return out;
}

double ratio_r_first_principles(Index d, double xi_mag) {
    check_d(d, "ratio_r_first_principles");
    check_xi(xi_mag, "ratio_r_first_principles");
    if (xi_mag == 0.0) {
        throw DomainError("ratio_r_first_principles: both strategies are singular without squeezing");
    }
    const double sh = std::sinh(xi_mag);
    const EnergyBudget budget{static_cast<double>(d + 1) * sh * sh, d};
    return trace_inverse(h_sim(budget)) / individual_strategy_qfim(budget).trace_inverse();
}

double ratio_r_closed_form(Index d, double xi_mag) {
    check_d(d, "ratio_r");
    check_xi(xi_mag, "ratio_r");
    const double th = std::tanh(xi_mag);
    return 1.0 - static_cast<double>(d - 1) / (2.0 * static_cast<double>(d)) * th * th;
}

double ratio_r(Index d, double xi_mag) {
    const double r = ratio_r_closed_form(d, xi_mag);
    if (xi_mag > 0.0) {
        const double fp = ratio_r_first_principles(d, xi_mag);
        if (std::abs(fp - r) > kRatioTol) {
            throw NumericalConsistencyError("ratio_r: closed form and trace ratio disagree");
        }
    }
    return r;
}

double ratio_r_limit(double xi_mag) {
    check_xi(xi_mag, "ratio_r_limit");
    const double th = std::tanh(xi_mag);
    return 1.0 - 0.5 * th * th;
}

double db_to_xi(double db) {
    if (!std::isfinite(db) || db < 0.0) throw DomainError("db_to_xi: need a finite non-negative dB value");
    return db * std::numbers::ln10 / 20.0;
}

double xi_to_db(double xi_mag) {
    check_xi(xi_mag, "xi_to_db");
    return 20.0 * xi_mag / std::numbers::ln10;
}

}  // namespace qfimkit
