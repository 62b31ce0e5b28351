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

#include "qfimkit/gaussian_state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "qfimkit/errors.hpp"

namespace qfimkit {

double ModeParams::energy() const {
    const double s = std::sinh(xi_mag);
    return std::norm(beta) + s * s;
}

void ModeParams::validate() const {
    if (!std::isfinite(beta.real()) || !std::isfinite(beta.imag()) || !std::isfinite(xi_mag) ||
        !std::isfinite(theta)) {
        throw DomainError("ModeParams: non-finite parameter");
    }
    if (xi_mag < 0.0 || xi_mag > kMaxSqueezing) {
        throw DomainError("ModeParams: squeezing magnitude " + std::to_string(xi_mag) +
                          " outside [0, 20]");
    }
}

PassiveUnitary::PassiveUnitary(ComplexMatrix a) : matrix_(std::move(a)) {
    if (!matrix_.is_square() || matrix_.rows() == 0) {
        throw DomainError("PassiveUnitary: matrix must be square and non-empty");
    }
    if (!matrix_.is_unitary(kStructuralTol)) {
        throw DomainError("PassiveUnitary: A^dagger A differs from I by more than 1e-10");
    }
    orthogonal_ = matrix_.is_real(1e-12) &&
                  std::abs(matrix_.values().real().determinant() - 1.0) <= kStructuralTol;
}

PassiveUnitary PassiveUnitary::identity(Index n) { return PassiveUnitary(ComplexMatrix::identity(n)); }

PassiveUnitary PassiveUnitary::orthogonal(const Eigen::MatrixXd &o) {
    PassiveUnitary u(ComplexMatrix::from_real(o));
    if (!u.is_orthogonal()) {
        throw DomainError("PassiveUnitary::orthogonal: determinant is not +1");
    }
    return u;
}

ProbeSpec::ProbeSpec(std::vector<ModeParams> modes, PassiveUnitary interferometer)
    : modes_(std::move(modes)), interferometer_(std::move(interferometer)) {
    if (modes_.size() < 2) {
        throw DomainError("ProbeSpec: need at least two modes (one phase and the reference)");
    }
    if (interferometer_.dim() != mode_count()) {
        throw DimensionMismatch("ProbeSpec: " + std::to_string(modes_.size()) +
                                " modes but interferometer of dimension " +
                                std::to_string(interferometer_.dim()));
    }
    for (const auto &m : modes_) m.validate();
}

ProbeSpec ProbeSpec::equal_squeezing(Index phases, double xi_mag, const PassiveUnitary &interferometer) {
    std::vector<ModeParams> modes(static_cast<std::size_t>(phases + 1), ModeParams{{0.0, 0.0}, xi_mag, 0.0});
    return ProbeSpec(std::move(modes), interferometer);
}

CVector ProbeSpec::displacements() const {
    CVector beta(mode_count());
    for (Index k = 0; k < mode_count(); ++k) beta(k) = modes_[static_cast<std::size_t>(k)].beta;
    return beta;
}

CVector ProbeSpec::output_displacements() const {
    return interferometer_.matrix().values().adjoint() * displacements();
}

QMatrices build_q_matrices(const ProbeSpec &probe) {
    const Index n = probe.mode_count();
    const Eigen::MatrixXcd &a = probe.interferometer().matrix().values();

    CVector d_diag(n);
    Eigen::VectorXd c_diag(n);
    CVector source(n);  // beta_k + beta_k^* e^{i theta_k} tanh|xi_k|
    double log_f = 0.0;
    double cosh_product = 1.0;
    for (Index k = 0; k < n; ++k) {
        const ModeParams &m = probe.modes()[static_cast<std::size_t>(k)];
        const double t = std::tanh(m.xi_mag);
        const double ch = std::cosh(m.xi_mag);
        const cplx phase = std::polar(1.0, m.theta);
        d_diag(k) = phase * t;
        c_diag(k) = ch * ch;
        source(k) = m.beta + std::conj(m.beta) * phase * t;
        const cplx quad = phase * std::conj(m.beta) * std::conj(m.beta) +
                          std::conj(phase) * m.beta * m.beta;
        log_f -= std::norm(m.beta) + 0.5 * t * quad.real();
        cosh_product *= ch;
    }

    const Eigen::MatrixXcd n_mat = a.adjoint() * d_diag.asDiagonal() * a.conjugate();
    const Eigen::MatrixXcd e_mat = a.adjoint() * c_diag.cast<cplx>().asDiagonal() * a;

    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd m_mat(2 * n, 2 * n);
    m_mat << 0.5 * id, 0.5 * n_mat, 0.5 * n_mat.adjoint(), 0.5 * id;

    Eigen::MatrixXcd m_inv(2 * n, 2 * n);
    m_inv << 2.0 * e_mat, -2.0 * n_mat * e_mat.transpose(), -2.0 * n_mat.adjoint() * e_mat,
        2.0 * e_mat.transpose();

    const CVector b = a.adjoint() * source;
    const CVector gamma = e_mat * b - e_mat * (n_mat * b.conjugate());

    QMatrices q{ComplexMatrix(n_mat), ComplexMatrix(e_mat), ComplexMatrix(m_mat), ComplexMatrix(m_inv),
                b, gamma, cplx(std::exp(log_f), 0.0), cosh_product};

    const double scale = std::max(1.0, m_inv.norm());
    if (!q.n_mat.is_symmetric(1e-12 * scale)) {
        throw NumericalConsistencyError("build_q_matrices: N is not symmetric");
    }
    if (!q.e_mat.is_hermitian(1e-12 * scale)) {
        throw NumericalConsistencyError("build_q_matrices: E is not Hermitian");
    }
    if ((m_inv * m_mat - Eigen::MatrixXcd::Identity(2 * n, 2 * n)).norm() > kStructuralTol * scale) {
        throw NumericalConsistencyError("build_q_matrices: M^-1 M differs from I");
    }
    return q;
}

double total_energy(const ProbeSpec &probe) {
    double e = 0.0;
    for (const auto &m : probe.modes()) e += m.energy();
    return e;
}

double q_function_value(const QMatrices &q, const CVector &alpha) {
    const Index n = q.mode_count();
    if (alpha.size() != n) {
        throw DimensionMismatch("q_function_value: alpha has length " + std::to_string(alpha.size()) +
                                ", expected " + std::to_string(n));
    }
    CVector r(2 * n);
    r << alpha, alpha.conjugate();
    const double quadratic = (r.adjoint() * q.m_mat.values() * r)(0).real();
    const double linear = 2.0 * q.b_vec.dot(alpha).real();  // dot() conjugates b
    const double log_q = std::log(q.f_norm.real()) - quadratic + linear -
                         static_cast<double>(n) * std::log(std::numbers::pi) -
                         std::log(q.cosh_product);
    return std::exp(log_q);
}

double q_function_value(const ProbeSpec &probe, const CVector &alpha) {
    return q_function_value(build_q_matrices(probe), alpha);
}

}  // namespace qfimkit
