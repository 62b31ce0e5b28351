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

#include "qfimkit/matrixkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "qfimkit/errors.hpp"

namespace qfimkit {

namespace {

void require_finite(const Eigen::MatrixXcd &m, const char *where) {
    if (!m.allFinite()) {
        throw NonFiniteValue(std::string(where) + ": non-finite entry");
    }
}

void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b, const char *where) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch(std::string(where) + ": shapes " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " and " + std::to_string(b.rows()) +
                                "x" + std::to_string(b.cols()));
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(Eigen::MatrixXcd values) : values_(std::move(values)) {
    require_finite(values_, "ComplexMatrix");
}

ComplexMatrix ComplexMatrix::identity(Index n) {
    return ComplexMatrix(Eigen::MatrixXcd::Identity(n, n));
}

ComplexMatrix ComplexMatrix::zeros(Index rows, Index cols) {
    return ComplexMatrix(Eigen::MatrixXcd::Zero(rows, cols));
}

ComplexMatrix ComplexMatrix::diagonal(const CVector &diag) {
    return ComplexMatrix(Eigen::MatrixXcd(diag.asDiagonal()));
}

ComplexMatrix ComplexMatrix::from_real(const Eigen::MatrixXd &values) {
    return ComplexMatrix(values.cast<cplx>());
}

ComplexMatrix ComplexMatrix::adjoint() const { return ComplexMatrix(values_.adjoint()); }
ComplexMatrix ComplexMatrix::transpose() const { return ComplexMatrix(values_.transpose()); }
ComplexMatrix ComplexMatrix::conjugate() const { return ComplexMatrix(values_.conjugate()); }

ComplexMatrix ComplexMatrix::block(Index row, Index col, Index rows, Index cols) const {
    if (row < 0 || col < 0 || row + rows > this->rows() || col + cols > this->cols()) {
        throw DimensionMismatch("ComplexMatrix::block: out of range");
    }
    return ComplexMatrix(values_.block(row, col, rows, cols));
}

bool ComplexMatrix::is_hermitian(double tol) const {
    return is_square() && (values_ - values_.adjoint()).norm() <= tol;
}

bool ComplexMatrix::is_symmetric(double tol) const {
    return is_square() && (values_ - values_.transpose()).norm() <= tol;
}

bool ComplexMatrix::is_unitary(double tol) const {
    if (!is_square()) return false;
    return (values_.adjoint() * values_ - Eigen::MatrixXcd::Identity(rows(), cols())).norm() <= tol;
}

bool ComplexMatrix::is_real(double tol) const { return values_.imag().cwiseAbs().maxCoeff() <= tol; }

double ComplexMatrix::frobenius_distance(const ComplexMatrix &other) const {
    require_same_shape(*this, other, "frobenius_distance");
    return (values_ - other.values_).norm();
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw DimensionMismatch("matrix product: inner dimensions differ");
    }
    return ComplexMatrix(a.values_ * b.values_);
}

ComplexMatrix operator+(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "matrix sum");
    return ComplexMatrix(a.values_ + b.values_);
}

ComplexMatrix operator-(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "matrix difference");
    return ComplexMatrix(a.values_ - b.values_);
}

ComplexMatrix operator*(cplx s, const ComplexMatrix &a) { return ComplexMatrix(s * a.values_); }

CVector operator*(const ComplexMatrix &a, const CVector &v) {
    if (a.cols() != v.size()) {
        throw DimensionMismatch("matrix-vector product: dimensions differ");
    }
    return a.values_ * v;
}

RealSymmetricMatrix::RealSymmetricMatrix(const Eigen::MatrixXd &values, double tol) {
    if (values.rows() != values.cols()) {
        throw DimensionMismatch("RealSymmetricMatrix: not square");
    }
    if (!values.allFinite()) {
        throw NonFiniteValue("RealSymmetricMatrix: non-finite entry");
    }
    if ((values - values.transpose()).norm() > tol) {
        throw DimensionMismatch("RealSymmetricMatrix: input is not symmetric");
    }
    values_ = values.triangularView<Eigen::Upper>();
    values_.triangularView<Eigen::StrictlyLower>() = values_.transpose();
}

RealSymmetricMatrix RealSymmetricMatrix::from_diagonal(const RVector &diag) {
    return RealSymmetricMatrix(Eigen::MatrixXd(diag.asDiagonal()));
}

RealSymmetricMatrix RealSymmetricMatrix::zeros(Index dim) {
    return RealSymmetricMatrix(Eigen::MatrixXd::Zero(dim, dim));
}

bool RealSymmetricMatrix::is_diagonal(double tol) const {
    for (Index r = 0; r < dim(); ++r) {
        for (Index c = r + 1; c < dim(); ++c) {
            if (std::abs(values_(r, c)) > tol) return false;
        }
    }
    return true;
}

double RealSymmetricMatrix::min_eigenvalue() const {
    if (dim() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(values_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

ComplexMatrix hadamard(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "hadamard");
    return ComplexMatrix(a.values().cwiseProduct(b.values()));
}

RVector hermitian_eigenvalues(const ComplexMatrix &m) {
    if (!m.is_hermitian()) {
        throw DimensionMismatch("hermitian_eigenvalues: matrix is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m.values(), Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

namespace {

// Inverse of a Hermitian positive definite block, with the condition guard.
Eigen::MatrixXcd guarded_hpd_inverse(const Eigen::MatrixXcd &block) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(block);
    const RVector &ev = solver.eigenvalues();
    const double lo = ev.minCoeff();
    // measured against the identity the block is subtracted from
    const double hi = std::max(ev.maxCoeff(), 1.0);
    if (!(lo > 0.0) || hi / lo > kMaxCondition) {
        throw SingularMatrix("schur_block_inverse: I - N N^dagger is numerically singular");
    }
    const Eigen::MatrixXcd &v = solver.eigenvectors();
    return v * ev.cwiseInverse().asDiagonal() * v.adjoint();
}

}  // namespace

ComplexMatrix schur_block_inverse(const ComplexMatrix &m) {
    if (!m.is_square() || m.rows() % 2 != 0 || m.rows() == 0) {
        throw DimensionMismatch("schur_block_inverse: expected a non-empty 2n x 2n matrix");
    }
    const Index n = m.rows() / 2;
    const Eigen::MatrixXcd &v = m.values();
    const Eigen::MatrixXcd half_identity = 0.5 * Eigen::MatrixXcd::Identity(n, n);
    if ((v.topLeftCorner(n, n) - half_identity).norm() > kStructuralTol ||
        (v.bottomRightCorner(n, n) - half_identity).norm() > kStructuralTol ||
        (v.bottomLeftCorner(n, n) - v.topRightCorner(n, n).adjoint()).norm() > kStructuralTol) {
        throw DimensionMismatch("schur_block_inverse: matrix is not of the form (I/2, N/2; N^dagger/2, I/2)");
    }

    const Eigen::MatrixXcd nmat = 2.0 * v.topRightCorner(n, n);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    const Eigen::MatrixXcd left = guarded_hpd_inverse(id - nmat * nmat.adjoint());
    const Eigen::MatrixXcd right = guarded_hpd_inverse(id - nmat.adjoint() * nmat);

    Eigen::MatrixXcd out(2 * n, 2 * n);
    out.topLeftCorner(n, n) = 2.0 * left;
    out.topRightCorner(n, n) = -2.0 * nmat * right;
    out.bottomLeftCorner(n, n) = -2.0 * nmat.adjoint() * left;
    out.bottomRightCorner(n, n) = 2.0 * right;
    return ComplexMatrix(std::move(out));
}

RealSymmetricMatrix sherman_morrison_inverse(const RealSymmetricMatrix &diag, double scalar,
                                             const RVector &u, double tol) {
    const Index n = diag.dim();
    if (u.size() != n) {
        throw DimensionMismatch("sherman_morrison_inverse: u has the wrong length");
    }
    if (!diag.is_diagonal()) {
        throw DimensionMismatch("sherman_morrison_inverse: first argument must be diagonal");
    }
    if (!(scalar >= 0.0) || !std::isfinite(scalar)) {
        throw DomainError("sherman_morrison_inverse: scalar must be finite and non-negative");
    }
    const RVector d = diag.diagonal();
    for (Index i = 0; i < n; ++i) {
        if (!(d(i) > tol)) {
            throw SingularMatrix("sherman_morrison_inverse: diagonal entry " + std::to_string(i) +
                                 " is not positive");
        }
    }

    // D^-1 - s D^-1 u u^T D^-1 / (1 + s u^T D^-1 u)
    const RVector dinv = d.cwiseInverse();
    const RVector w = dinv.cwiseProduct(u);
    const double denom = 1.0 + scalar * u.dot(w);
    Eigen::MatrixXd out = Eigen::MatrixXd(dinv.asDiagonal()) - (scalar / denom) * (w * w.transpose());
    return RealSymmetricMatrix(out, std::numeric_limits<double>::infinity());
}

}  // namespace qfimkit
