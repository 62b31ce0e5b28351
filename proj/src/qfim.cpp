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

#include "qfimkit/qfim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "qfimkit/errors.hpp"

namespace qfimkit {

CovMatrixH::CovMatrixH(RealSymmetricMatrix entries, CovConvention convention)
    : entries_(std::move(entries)), convention_(convention) {}

CovMatrixH CovMatrixH::to_raw() const {
    if (convention_ == CovConvention::raw_covariance) return *this;
    return CovMatrixH(RealSymmetricMatrix(entries_.values() / 4.0), CovConvention::raw_covariance);
}

CovMatrixH CovMatrixH::to_scaled() const {
    if (convention_ == CovConvention::scaled_by_four) return *this;
    return CovMatrixH(RealSymmetricMatrix(entries_.values() * 4.0), CovConvention::scaled_by_four);
}

namespace {

double scale_of(const Eigen::MatrixXd &m) {
    return m.size() == 0 ? 1.0 : std::max(1.0, m.cwiseAbs().maxCoeff());
}

}  // namespace

Qfim::Qfim(RealSymmetricMatrix dense, std::optional<StructuredQfim> structured)
    : dense_(std::move(dense)), structured_(std::move(structured)) {
    const double scale = scale_of(dense_.values());
    if (dense_.dim() > 0 && dense_.min_eigenvalue() < -1e-9 * scale) {
        throw DomainError("Qfim: matrix is not positive semidefinite");
    }
    if (structured_) {
        const Index d = dense_.dim();
        if (structured_->h_diag.size() != d) {
            throw DimensionMismatch("Qfim: structured diagonal has the wrong length");
        }
        Eigen::MatrixXd rebuilt = Eigen::MatrixXd::Constant(d, d, structured_->h00);
        rebuilt.diagonal() += structured_->h_diag;
        if ((rebuilt - dense_.values()).cwiseAbs().maxCoeff() > kStructureTol * scale) {
            throw NumericalConsistencyError("Qfim: structured form does not reproduce the dense matrix");
        }
    }
}

CovMatrixH photon_covariances(const QMatrices &q) {
    const Eigen::MatrixXcd &e = q.e_mat.values();
    const Eigen::MatrixXcd en = e * q.n_mat.values();
    const CVector &g = q.gamma_vec;
    const Index n = q.mode_count();

    const Eigen::MatrixXcd ggt = g * g.transpose();
    const Eigen::MatrixXcd ggh = g * g.adjoint();
    const Eigen::MatrixXcd pair = en - ggt;

    Eigen::MatrixXcd h = pair.cwiseProduct(pair.conjugate()) - ggt.cwiseProduct(ggt.conjugate()) +
                         e.cwiseProduct(e.conjugate() + g.conjugate() * g.transpose()) +
                         e.conjugate().cwiseProduct(ggh);
    h.diagonal() -= (e + ggh).diagonal();

    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    const double residue = h.imag().cwiseAbs().maxCoeff();
    if (residue > kMaxImagResidue * scale) {
        throw NumericalConsistencyError("photon_covariances: imaginary residue " + std::to_string(residue));
    }
    Eigen::MatrixXd real = h.real();
    for (Index i = 0; i < n; ++i) real(i, i) = std::max(real(i, i), 0.0);
    return CovMatrixH(RealSymmetricMatrix(real, kStructuralTol * scale), CovConvention::raw_covariance);
}

ComplexMatrix printed_covariance_display(const QMatrices &q) {
    const Eigen::MatrixXcd &e = q.e_mat.values();
    const Eigen::MatrixXcd &nm = q.n_mat.values();
    const Eigen::MatrixXcd en = e * nm;
    const Index n = q.mode_count();
    const CVector g = (2.0 * e.conjugate() - e.conjugate() * nm.conjugate() - nm.conjugate() * e) * q.b_vec / 2.0;
    const Eigen::MatrixXcd ggt = g * g.transpose();
    const Eigen::MatrixXcd ggh = g * g.adjoint();
    const Eigen::MatrixXcd pair = en - ggt;
    const Eigen::MatrixXcd e_sum = e + e.conjugate();
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd h = pair.cwiseProduct(pair.conjugate()) - ggt.cwiseProduct(ggt.conjugate()) +
                         0.25 * e_sum.cwiseProduct(e_sum + 2.0 * ggh + 2.0 * ggh.conjugate()) -
                         (e + ggh).cwiseProduct(id);
    return ComplexMatrix(4.0 * h);
}

double generating_function(const QMatrices &q, const CVector &lambda) {
    const Index n = q.mode_count();
    if (lambda.size() != n) {
        throw DimensionMismatch("generating_function: lambda has the wrong length");
    }
    CVector mu(2 * n);
    mu << lambda, lambda.conjugate();
    CVector rb(2 * n);
    rb << q.b_vec, q.b_vec.conjugate();
    const Eigen::MatrixXcd &minv = q.m_inv.values();
    const cplx exponent = (rb.dot(minv * mu) + mu.dot(minv * rb) + mu.dot(minv * mu)) / 4.0;
    return std::exp(exponent.real());
}

namespace {

// Real coordinates (u_i, v_i, u_j, v_j) of the sources; i == j accumulates onto one lambda.
class SourceGrid {
   public:
    SourceGrid(const QMatrices &q, Index i, Index j) : q_(q), i_(i), j_(j) {}

    double eval(const std::array<double, 4> &x) const {
        CVector lambda = CVector::Zero(q_.mode_count());
        lambda(i_) += cplx(x[0], x[1]);
        lambda(j_) += cplx(x[2], x[3]);
        return generating_function(q_, lambda);
    }

    // d/dlambda_k d/dlambda_k^* at `base`, k selects the (u, v) pair at offset 0 or 2.
    double laplacian(int pair, double s, std::array<double, 4> base) const {
        double acc = 0.0;
        for (int c = 0; c < 2; ++c) {
            auto plus = base;
            auto minus = base;
            plus[pair + c] += s;
            minus[pair + c] -= s;
            acc += (eval(plus) - 2.0 * eval(base) + eval(minus)) / (s * s);
        }
        return acc / 4.0;
    }

    double double_laplacian(double s) const {
        double acc = 0.0;
        for (int c = 0; c < 2; ++c) {
            std::array<double, 4> plus{}, minus{};
            plus[c] = s;
            minus[c] = -s;
            acc += (laplacian(2, s, plus) - 2.0 * laplacian(2, s, {}) + laplacian(2, s, minus)) / (s * s);
        }
        return acc / 4.0;
    }

   private:
    const QMatrices &q_;
    Index i_;
    Index j_;
};

template <typename F>
double richardson(F &&f, double h) {
    return (4.0 * f(h) - f(2.0 * h)) / 3.0;
}

}  // namespace

GeneratingFunctionMoments moments_via_generating_function(const QMatrices &q, Index i, Index j, double step) {
    const Index n = q.mode_count();
    if (i < 0 || j < 0 || i >= n || j >= n) {
        throw DomainError("moments_via_generating_function: mode index out of range");
    }
    if (!(step >= 1e-5) || !std::isfinite(step)) {
        throw DomainError("moments_via_generating_function: step " + std::to_string(step) +
                          " is below the round-off limit 1e-5");
    }
    const SourceGrid grid(q, i, j);
    const double aa_i = richardson([&](double s) { return grid.laplacian(0, s, {}); }, step);
    const double aa_j = richardson([&](double s) { return grid.laplacian(2, s, {}); }, step);
    const double aaaa = richardson([&](double s) { return grid.double_laplacian(s); }, step);

    GeneratingFunctionMoments out;
    out.mean_i = aa_i - 1.0;
    out.mean_j = aa_j - 1.0;
    out.second_moment_ij = aaaa - aa_i - aa_j - (i == j ? aa_i : 0.0) + 1.0;
    return out;
}

Qfim qfim_from_covariances(const CovMatrixH &h) {
    const CovMatrixH raw = h.to_raw();
    const Index n = raw.dim();
    if (n < 2) {
        throw DimensionMismatch("qfim_from_covariances: need at least two modes");
    }
    const Index d = n - 1;
    Eigen::MatrixXd dense(d, d);
    for (Index i = 1; i <= d; ++i) {
        for (Index j = 1; j <= d; ++j) {
            dense(i - 1, j - 1) = 4.0 * (raw(i, j) - raw(i, 0) - raw(0, j) + raw(0, 0));
        }
    }

    const double rank_one = 4.0 * raw(0, 0);
    double residual = 0.0;
    for (Index i = 0; i < d; ++i) {
        for (Index j = 0; j < d; ++j) {
            if (i != j) residual = std::max(residual, std::abs(dense(i, j) - rank_one));
        }
    }
    std::optional<StructuredQfim> structured;
    if (residual < kStructureTol) {
        StructuredQfim s;
        s.h00 = rank_one;
        s.h_diag = dense.diagonal().array() - rank_one;
        structured = std::move(s);
    }
    return Qfim(RealSymmetricMatrix(dense, kStructuralTol * scale_of(dense)), std::move(structured));
}

namespace {

bool structured_usable(const Qfim &qfim) {
    const auto &s = qfim.structured();
    return s && s->h00 >= 0.0 && (s->h_diag.array() > 0.0).all();
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> invertible_spectrum(const Qfim &qfim) {
    if (qfim.dim() == 0) {
        throw SingularQfim("QFIM has no phases");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(qfim.dense().values());
    const RVector &ev = solver.eigenvalues();
    if (!(ev.minCoeff() > 1e-12 * std::max(1.0, ev.maxCoeff()))) {
        throw SingularQfim("QFIM is singular (min eigenvalue " + std::to_string(ev.minCoeff()) +
                           "); the phases cannot all be estimated with this probe");
    }
    return solver;
}

}  // namespace

double trace_inverse_dense(const Qfim &qfim) {
    return invertible_spectrum(qfim).eigenvalues().cwiseInverse().sum();
}

double trace_inverse(const Qfim &qfim) {
    if (!structured_usable(qfim)) return trace_inverse_dense(qfim);
    const auto &s = *qfim.structured();
    const double sum_inv = s.h_diag.cwiseInverse().sum();
    const double sum_inv_sq = s.h_diag.cwiseInverse().cwiseAbs2().sum();
    if (s.h00 == 0.0) return sum_inv;
    return sum_inv - sum_inv_sq / (1.0 / s.h00 + sum_inv);
}

RealSymmetricMatrix qfim_inverse(const Qfim &qfim) {
    if (structured_usable(qfim)) {
        const auto &s = *qfim.structured();
        return sherman_morrison_inverse(RealSymmetricMatrix::from_diagonal(s.h_diag), s.h00,
                                        RVector::Ones(s.h_diag.size()));
    }
    const auto solver = invertible_spectrum(qfim);
    const Eigen::MatrixXd &v = solver.eigenvectors();
    const Eigen::MatrixXd inv = v * solver.eigenvalues().cwiseInverse().asDiagonal() * v.transpose();
    return RealSymmetricMatrix(inv, std::numeric_limits<double>::infinity());
}

Qfim probe_qfim(const ProbeSpec &probe) {
    return qfim_from_covariances(photon_covariances(build_q_matrices(probe)));
}

}  // namespace qfimkit
