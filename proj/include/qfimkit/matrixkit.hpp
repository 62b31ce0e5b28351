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
 * Small dense matrix layer used by the rest of the library.
 *
 * Values are immutable once constructed: every operation returns a new
 * matrix, and constructors reject non-finite entries. Storage and the
 * generic factorizations come from Eigen; the structured inverses
 * (2x2 block Schur complement, diagonal plus rank-1) are implemented here.
 */

#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace qfimkit {

using Index = Eigen::Index;
using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Absolute Frobenius tolerance for structural checks (unitarity, Hermiticity, inverse residuals).
inline constexpr double kStructuralTol = 1e-10;

/// Condition number above which a block is treated as singular.
inline constexpr double kMaxCondition = 1e12;

class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(Eigen::MatrixXcd values);

    static ComplexMatrix identity(Index n);
    static ComplexMatrix zeros(Index rows, Index cols);
    static ComplexMatrix diagonal(const CVector &diag);
    static ComplexMatrix from_real(const Eigen::MatrixXd &values);

    Index rows() const noexcept { return values_.rows(); }
    Index cols() const noexcept { return values_.cols(); }
    bool is_square() const noexcept { return rows() == cols(); }
    cplx operator()(Index r, Index c) const { return values_(r, c); }
    const Eigen::MatrixXcd &values() const noexcept { return values_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;

    /// Sub-block copy.
    ComplexMatrix block(Index row, Index col, Index rows, Index cols) const;

    bool is_hermitian(double tol = kStructuralTol) const;
    bool is_symmetric(double tol = kStructuralTol) const;
    bool is_unitary(double tol = kStructuralTol) const;
    bool is_real(double tol) const;

    double frobenius_distance(const ComplexMatrix &other) const;

    friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
    friend ComplexMatrix operator+(const ComplexMatrix &a, const ComplexMatrix &b);
    friend ComplexMatrix operator-(const ComplexMatrix &a, const ComplexMatrix &b);
    friend ComplexMatrix operator*(cplx s, const ComplexMatrix &a);
    friend CVector operator*(const ComplexMatrix &a, const CVector &v);

   private:
    Eigen::MatrixXcd values_;
};

/// Real symmetric matrix; the upper triangle is mirrored on construction so symmetry is exact.
class RealSymmetricMatrix {
   public:
    RealSymmetricMatrix() = default;
    /// Throws DimensionMismatch if `values` is not square or asymmetric beyond `tol` (Frobenius).
    explicit RealSymmetricMatrix(const Eigen::MatrixXd &values, double tol = kStructuralTol);

    static RealSymmetricMatrix from_diagonal(const RVector &diag);
    static RealSymmetricMatrix zeros(Index dim);

    Index dim() const noexcept { return values_.rows(); }
    double operator()(Index r, Index c) const { return values_(r, c); }
    const Eigen::MatrixXd &values() const noexcept { return values_; }
    RVector diagonal() const { return values_.diagonal(); }
    double trace() const { return values_.trace(); }
    bool is_diagonal(double tol = 0.0) const;
    double min_eigenvalue() const;

   private:
    Eigen::MatrixXd values_;
};

/// Entrywise product. Throws DimensionMismatch on unequal shapes.
ComplexMatrix hadamard(const ComplexMatrix &a, const ComplexMatrix &b);

/// Ascending eigenvalues of a Hermitian matrix.
RVector hermitian_eigenvalues(const ComplexMatrix &m);

/**
 * Inverse of the 2n x 2n Hermitian block matrix
 *
 *     M = 1/2 [ I    N ]
 *             [ N^†  I ]
 *
 * through the Schur complement:
 *
 *     M^-1 = 2 [ (I - N N^†)^-1          -N (I - N^† N)^-1 ]
 *              [ -N^† (I - N N^†)^-1     (I - N^† N)^-1    ]
 *
 * Throws DimensionMismatch when `m` is not of that shape (within kStructuralTol)
 * and SingularMatrix when the condition number of I - N N^† exceeds kMaxCondition.
 */
ComplexMatrix schur_block_inverse(const ComplexMatrix &m);

/**
 * (diag + scalar u u^T)^-1 by the Sherman-Morrison formula.
 *
 * `diag` must be diagonal with entries above `tol`; otherwise SingularMatrix is
 * thrown (a vanishing variance means the probe carries no information on that phase).
 */
RealSymmetricMatrix sherman_morrison_inverse(const RealSymmetricMatrix &diag, double scalar,
                                             const RVector &u, double tol = 1e-12);

}  // namespace qfimkit
