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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "qfimkit/errors.hpp"
#include "qfimkit/gaussian_state.hpp"
#include "qfimkit/matrixkit.hpp"
#include "support/test_support.hpp"

namespace qfimkit {
namespace {

using testing::dense_inverse;
using testing::Gen;

Eigen::MatrixXcd block_m(const Eigen::MatrixXcd &n) {
    const Index k = n.rows();
    Eigen::MatrixXcd m(2 * k, 2 * k);
    m << 0.5 * Eigen::MatrixXcd::Identity(k, k), 0.5 * n, 0.5 * n.adjoint(), 0.5 * Eigen::MatrixXcd::Identity(k, k);
    return m;
}

// N = A^† diag(e^{i theta} tanh|xi|) A^*
Eigen::MatrixXcd random_n(Gen &g, Index modes, double max_xi, RVector *xis = nullptr) {
    const PassiveUnitary a = g.interferometer(InterferometerKind::haar_unitary, modes);
    CVector diag(modes);
    if (xis) xis->resize(modes);
    for (Index k = 0; k < modes; ++k) {
        const double xi = g.uniform(0.0, max_xi);
        if (xis) (*xis)(k) = xi;
        diag(k) = std::polar(std::tanh(xi), g.uniform(-3.0, 3.0));
    }
    const Eigen::MatrixXcd &u = a.matrix().values();
    return u.adjoint() * diag.asDiagonal() * u.conjugate();
}

TEST(ComplexMatrix, RejectsNonFiniteEntries) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
    m(0, 1) = cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
    EXPECT_THROW(ComplexMatrix{m}, NonFiniteValue);
    m(0, 1) = cplx(0.0, std::numeric_limits<double>::infinity());
    EXPECT_THROW(ComplexMatrix{m}, NonFiniteValue);
}

TEST(ComplexMatrix, ShapeChecks) {
    const ComplexMatrix a = ComplexMatrix::zeros(2, 3);
    EXPECT_EQ(a.rows(), 2);
    EXPECT_EQ(a.cols(), 3);
    EXPECT_THROW(a * a, DimensionMismatch);
    EXPECT_THROW(a + ComplexMatrix::zeros(3, 2), DimensionMismatch);
    EXPECT_THROW(a.block(1, 1, 2, 2), DimensionMismatch);
}

TEST(ComplexMatrix, StructuralPredicates) {
    Gen g(11);
    const PassiveUnitary u = g.interferometer(InterferometerKind::haar_unitary, 4);
    EXPECT_TRUE(u.matrix().is_unitary());
    const ComplexMatrix h = u.matrix() + u.matrix().adjoint();
    EXPECT_TRUE(h.is_hermitian());
    const ComplexMatrix s = u.matrix() + u.matrix().transpose();
    EXPECT_TRUE(s.is_symmetric());
    EXPECT_FALSE(u.matrix().is_real(1e-12));
    EXPECT_NEAR(u.matrix().frobenius_distance(u.matrix().conjugate().conjugate()), 0.0, 0.0);
}

TEST(RealSymmetricMatrix, SymmetryEnforced) {
    Eigen::MatrixXd m(2, 2);
    m << 1.0, 2.0, 2.0 + 1e-13, 3.0;
    const RealSymmetricMatrix s(m);
    EXPECT_EQ(s(0, 1), s(1, 0));
    m(1, 0) = 2.5;
    EXPECT_THROW(RealSymmetricMatrix{m}, DimensionMismatch);
    EXPECT_THROW(RealSymmetricMatrix{Eigen::MatrixXd::Zero(2, 3)}, DimensionMismatch);
}

TEST(Hadamard, IdentityZeroesOffDiagonal) {
    Gen g(1);
    const ComplexMatrix a = g.interferometer(InterferometerKind::haar_unitary, 3).matrix();
    const ComplexMatrix r = hadamard(a, ComplexMatrix::identity(3));
    for (Index i = 0; i < 3; ++i)
        for (Index j = 0; j < 3; ++j) EXPECT_EQ(r(i, j), i == j ? a(i, i) : cplx(0.0, 0.0));
}

TEST(Hadamard, OnesIsNeutral) {
    Gen g(2);
    const ComplexMatrix a = g.interferometer(InterferometerKind::haar_unitary, 3).matrix();
    const ComplexMatrix ones(Eigen::MatrixXcd::Ones(3, 3));
    EXPECT_EQ(hadamard(a, ones).frobenius_distance(a), 0.0);
}

TEST(Hadamard, MatchesLoop) {
    Gen g(3);
    const Eigen::MatrixXcd a = Eigen::MatrixXcd::Random(3, 3);
    const Eigen::MatrixXcd b = Eigen::MatrixXcd::Random(3, 3);
    const ComplexMatrix r = hadamard(ComplexMatrix(a), ComplexMatrix(b));
    const Eigen::MatrixXcd ref = testing::loop_hadamard(a, b);
    for (Index i = 0; i < 3; ++i)
        for (Index j = 0; j < 3; ++j) EXPECT_EQ(r(i, j), ref(i, j));
    EXPECT_THROW(hadamard(ComplexMatrix(a), ComplexMatrix::zeros(2, 3)), DimensionMismatch);
}

TEST(SchurBlockInverse, NoSqueezingGivesTwoI) {
    const ComplexMatrix inv = schur_block_inverse(ComplexMatrix(block_m(Eigen::MatrixXcd::Zero(3, 3))));
    EXPECT_LT(inv.frobenius_distance(2.0 * ComplexMatrix::identity(6)), 1e-15);
}

TEST(SchurBlockInverse, SingleModeMatchesDenseInverse) {
    for (double xi : {0.1, 0.5, 1.3, 2.7}) {
        Eigen::MatrixXcd n(1, 1);
        n(0, 0) = std::tanh(xi);
        const Eigen::MatrixXcd m = block_m(n);
        const ComplexMatrix inv = schur_block_inverse(ComplexMatrix(m));
        EXPECT_LT((inv.values() - dense_inverse(m)).cwiseAbs().maxCoeff(), 1e-12) << "xi=" << xi;
    }
}

TEST(SchurBlockInverse, RejectsWrongStructure) {
    Eigen::MatrixXcd m = block_m(Eigen::MatrixXcd::Zero(2, 2));
    m(0, 0) = 1.0;
    EXPECT_THROW(schur_block_inverse(ComplexMatrix(m)), DimensionMismatch);
    EXPECT_THROW(schur_block_inverse(ComplexMatrix::identity(3)), DimensionMismatch);
}

TEST(SchurBlockInverse, NearUnitNormIsSingular) {
    Eigen::MatrixXcd n(1, 1);
    n(0, 0) = 1.0 - 1e-15;
    EXPECT_THROW(schur_block_inverse(ComplexMatrix(block_m(n))), SingularMatrix);
}

TEST(SchurBlockInverseProperty, InverseTimesMatrixIsIdentity) {
    Gen g(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const Index modes = g.index(1, 5);
        const Eigen::MatrixXcd m = block_m(random_n(g, modes, 3.0));
        const ComplexMatrix inv = schur_block_inverse(ComplexMatrix(m));
        const double residual = (inv.values() * m - Eigen::MatrixXcd::Identity(2 * modes, 2 * modes)).norm();
        ASSERT_LT(residual, 1e-10) << "trial " << trial;
    }
}

TEST(BlockMatrixProperty, EigenvaluesFollowSqueezing) {
    Gen g(77);
    for (int trial = 0; trial < 100; ++trial) {
        const Index modes = g.index(1, 5);
        RVector xis;
        const Eigen::MatrixXcd m = block_m(random_n(g, modes, 3.0, &xis));
        std::vector<double> expected;
        for (Index k = 0; k < modes; ++k) {
            expected.push_back((1.0 - std::tanh(xis(k))) / 2.0);
            expected.push_back((1.0 + std::tanh(xis(k))) / 2.0);
        }
        std::sort(expected.begin(), expected.end());
        const RVector ev = hermitian_eigenvalues(ComplexMatrix(m));
        ASSERT_EQ(ev.size(), static_cast<Index>(expected.size()));
        for (Index k = 0; k < ev.size(); ++k) {
            ASSERT_NEAR(ev(k), expected[static_cast<std::size_t>(k)], 1e-10) << "trial " << trial;
        }
        ASSERT_GE(ev.minCoeff(), -1e-12);
    }
}

TEST(ShermanMorrison, ZeroScalarIsDiagonalInverse) {
    const RVector d = (RVector(3) << 2.0, 4.0, 5.0).finished();
    const RealSymmetricMatrix inv = sherman_morrison_inverse(RealSymmetricMatrix::from_diagonal(d), 0.0, RVector::Ones(3));
    for (Index i = 0; i < 3; ++i)
        for (Index j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(inv(i, j), i == j ? 1.0 / d(i) : 0.0);
}

TEST(ShermanMorrison, TwoByTwoExample) {
    const RealSymmetricMatrix inv =
        sherman_morrison_inverse(RealSymmetricMatrix::from_diagonal(RVector::Constant(2, 2.0)), 2.0, RVector::Ones(2));
    EXPECT_NEAR(inv(0, 0), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(inv(1, 1), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(inv(0, 1), -1.0 / 6.0, 1e-15);
    Eigen::MatrixXd m(2, 2);
    m << 4.0, 2.0, 2.0, 4.0;
    EXPECT_LT((inv.values() - dense_inverse(m)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ShermanMorrison, EqualDiagonalTrace) {
    for (Index d : {1, 2, 7, 30}) {
        const double h = 3.5;
        const RealSymmetricMatrix inv =
            sherman_morrison_inverse(RealSymmetricMatrix::from_diagonal(RVector::Constant(d, h)), h, RVector::Ones(d));
        const double dd = static_cast<double>(d);
        EXPECT_NEAR(inv.trace(), dd * dd / (h * (dd + 1.0)), 1e-13);
    }
}

TEST(ShermanMorrison, Errors) {
    const auto diag = RealSymmetricMatrix::from_diagonal((RVector(2) << 1.0, 0.0).finished());
    EXPECT_THROW(sherman_morrison_inverse(diag, 1.0, RVector::Ones(2)), SingularMatrix);
    const auto ok = RealSymmetricMatrix::from_diagonal(RVector::Ones(2));
    EXPECT_THROW(sherman_morrison_inverse(ok, -1.0, RVector::Ones(2)), DomainError);
    EXPECT_THROW(sherman_morrison_inverse(ok, 1.0, RVector::Ones(3)), DimensionMismatch);
    Eigen::MatrixXd full = Eigen::MatrixXd::Ones(2, 2);
    EXPECT_THROW(sherman_morrison_inverse(RealSymmetricMatrix(full), 1.0, RVector::Ones(2)), DimensionMismatch);
}

TEST(ShermanMorrisonProperty, AgreesWithDenseLu) {
    Gen g(5150);
    for (int trial = 0; trial < 300; ++trial) {
        const Index d = g.index(1, 64);
        RVector diag(d);
        RVector u(d);
        for (Index i = 0; i < d; ++i) {
            diag(i) = std::exp(g.uniform(-3.0, 3.0));
            u(i) = g.uniform(-2.0, 2.0);
        }
        const double scalar = trial % 5 == 0 ? 0.0 : std::exp(g.uniform(-3.0, 3.0));
        const RealSymmetricMatrix inv =
            sherman_morrison_inverse(RealSymmetricMatrix::from_diagonal(diag), scalar, u);
        const Eigen::MatrixXd dense = Eigen::MatrixXd(diag.asDiagonal()) + scalar * u * u.transpose();
        const Eigen::MatrixXd ref = dense_inverse(dense);
        const double rel = (inv.values() - ref).norm() / ref.norm();
        ASSERT_LT(rel, 1e-10) << "trial " << trial << " d=" << d;
    }
}

}  // namespace
}  // namespace qfimkit
