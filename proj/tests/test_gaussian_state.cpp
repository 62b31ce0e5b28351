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

#include <cmath>
#include <limits>
#include <numbers>

#include "qfimkit/errors.hpp"
#include "qfimkit/fock_oracle.hpp"
#include "qfimkit/gaussian_state.hpp"
#include "support/test_support.hpp"

namespace qfimkit {
namespace {

using testing::Gen;

ProbeSpec two_mode(ModeParams a, ModeParams b, const PassiveUnitary &u = PassiveUnitary::identity(2)) {
    return ProbeSpec({a, b}, u);
}

TEST(ModeParams, Validation) {
    ModeParams m;
    EXPECT_NO_THROW(m.validate());
    m.xi_mag = -0.1;
    EXPECT_THROW(m.validate(), DomainError);
    m.xi_mag = 20.5;
    EXPECT_THROW(m.validate(), DomainError);
    m.xi_mag = 0.3;
    m.theta = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(m.validate(), DomainError);
    m.theta = 0.0;
    m.beta = {std::numeric_limits<double>::infinity(), 0.0};
    EXPECT_THROW(m.validate(), DomainError);
}

TEST(ModeParams, Energy) {
    ModeParams m{{0.3, -0.4}, 0.7, 1.0};
    EXPECT_NEAR(m.energy(), 0.25 + std::sinh(0.7) * std::sinh(0.7), 1e-15);
}

TEST(PassiveUnitary, RejectsNonUnitary) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(2, 2);
    a(0, 1) = 1e-6;
    EXPECT_THROW(PassiveUnitary{ComplexMatrix(a)}, DomainError);
}

TEST(PassiveUnitary, OrthogonalFlag) {
    EXPECT_TRUE(PassiveUnitary::identity(3).is_orthogonal());
    Eigen::MatrixXd reflection = Eigen::MatrixXd::Identity(2, 2);
    reflection(1, 1) = -1.0;
    EXPECT_THROW(PassiveUnitary::orthogonal(reflection), DomainError);
    EXPECT_FALSE(PassiveUnitary(ComplexMatrix::from_real(reflection)).is_orthogonal());
    Gen g(4);
    EXPECT_TRUE(g.interferometer(InterferometerKind::haar_orthogonal, 4).is_orthogonal());
    EXPECT_FALSE(g.interferometer(InterferometerKind::haar_unitary, 4).is_orthogonal());
}

TEST(ProbeSpec, ShapeChecks) {
    EXPECT_THROW(ProbeSpec({ModeParams{}}, PassiveUnitary::identity(1)), DomainError);
    EXPECT_THROW(ProbeSpec({ModeParams{}, ModeParams{}}, PassiveUnitary::identity(3)), DimensionMismatch);
    const ProbeSpec p = ProbeSpec::equal_squeezing(3, 0.4, PassiveUnitary::identity(4));
    EXPECT_EQ(p.mode_count(), 4);
    EXPECT_EQ(p.phase_count(), 3);
}

TEST(BuildQMatrices, NoSqueezing) {
    const ModeParams a{{0.5, 0.2}, 0.0, 0.0};
    const ModeParams b{{-0.1, 0.9}, 0.0, 0.0};
    const QMatrices q = build_q_matrices(two_mode(a, b));
    EXPECT_LT(q.n_mat.frobenius_distance(ComplexMatrix::zeros(2, 2)), 1e-15);
    EXPECT_LT(q.e_mat.frobenius_distance(ComplexMatrix::identity(2)), 1e-15);
    EXPECT_LT(q.m_mat.frobenius_distance(0.5 * ComplexMatrix::identity(4)), 1e-15);
    EXPECT_LT(std::abs(q.b_vec(0) - a.beta), 1e-15);
    EXPECT_LT(std::abs(q.b_vec(1) - b.beta), 1e-15);
}

TEST(BuildQMatrices, EqualRealSqueezingUnderOrthogonal) {
    Gen g(8);
    for (Index d : {1, 2, 4}) {
        const double xi = 0.65;
        const ProbeSpec p = ProbeSpec::equal_squeezing(d, xi, g.interferometer(InterferometerKind::haar_orthogonal, d + 1));
        const QMatrices q = build_q_matrices(p);
        const Index n = d + 1;
        EXPECT_LT(q.n_mat.frobenius_distance(std::tanh(xi) * ComplexMatrix::identity(n)), 1e-13);
        const double c = std::cosh(xi);
        EXPECT_LT(q.e_mat.frobenius_distance((c * c) * ComplexMatrix::identity(n)), 1e-13);
    }
}

TEST(BuildQMatrices, SourceVectorMatchesDirectSum) {
    Gen g(99);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<ModeParams> modes;
        for (int k = 0; k < 3; ++k) modes.push_back(g.mode(1.2, 1.5));
        const PassiveUnitary u = g.interferometer(InterferometerKind::haar_unitary, 3);
        const QMatrices q = build_q_matrices(ProbeSpec(modes, u));
        const Eigen::MatrixXcd &a = u.matrix().values();
        for (Index j = 0; j < 3; ++j) {
            cplx sum(0.0, 0.0);
            for (Index k = 0; k < 3; ++k) {
                const ModeParams &m = modes[static_cast<std::size_t>(k)];
                sum += std::conj(a(k, j)) *
                       (m.beta + std::conj(m.beta) * std::polar(1.0, m.theta) * std::tanh(m.xi_mag));
            }
            EXPECT_LT(std::abs(q.b_vec(j) - sum), 1e-13);
        }
    }
}

TEST(BuildQMatrices, MeanIsOutputDisplacement) {
    Gen g(31);
    for (int trial = 0; trial < 50; ++trial) {
        const ProbeSpec p = g.probe();
        const QMatrices q = build_q_matrices(p);
        EXPECT_LT((q.gamma_vec - p.output_displacements()).norm(), 1e-12);
    }
}

TEST(BuildQMatricesProperty, StructuralInvariants) {
    Gen g(123);
    ProbeSampling wide;
    wide.max_modes = 5;
    wide.max_xi = 2.5;
    wide.max_beta = 2.0;
    for (int trial = 0; trial < 200; ++trial) {
        const ProbeSpec p = g.probe(wide);
        const QMatrices q = build_q_matrices(p);
        ASSERT_TRUE(q.n_mat.is_symmetric(1e-12));
        ASSERT_TRUE(q.e_mat.is_hermitian(1e-12));
        ASSERT_TRUE(q.m_mat.is_hermitian(1e-12));
        const Index n = p.mode_count();
        ASSERT_LT((q.m_inv.values() * q.m_mat.values() - Eigen::MatrixXcd::Identity(2 * n, 2 * n)).norm(),
                  1e-10 * std::max(1.0, q.m_inv.values().norm()));
        const ComplexMatrix schur = schur_block_inverse(q.m_mat);
        ASSERT_LT(schur.frobenius_distance(q.m_inv), 1e-10 * std::max(1.0, q.m_inv.values().norm()));
        const RVector ev = hermitian_eigenvalues(q.m_mat);
        ASSERT_GE(ev.minCoeff(), 0.0);
    }
}

TEST(TotalEnergy, Examples) {
    EXPECT_EQ(total_energy(ProbeSpec::equal_squeezing(2, 0.0, PassiveUnitary::identity(3))), 0.0);
    for (Index d : {1, 3, 6}) {
        const double xi = 0.8;
        const double s = std::sinh(xi);
        EXPECT_NEAR(total_energy(ProbeSpec::equal_squeezing(d, xi, PassiveUnitary::identity(d + 1))),
                    static_cast<double>(d + 1) * s * s, 1e-13);
    }
    EXPECT_NEAR(total_energy(two_mode(ModeParams{{1.0, 1.0}, 0.0, 0.0}, ModeParams{})), 2.0, 1e-15);
}

TEST(TotalEnergyProperty, InterferometerInvariant) {
    Gen g(6);
    for (int trial = 0; trial < 100; ++trial) {
        const ProbeSpec p = g.probe();
        const ProbeSpec q(p.modes(), g.interferometer(InterferometerKind::haar_unitary, p.mode_count()));
        EXPECT_EQ(total_energy(p), total_energy(q));
        // the mean photon number after the interferometer, from the oracle
        const RVector means = contracted_means(probe_moments(q));
        EXPECT_NEAR(means.sum(), total_energy(p), 1e-10);
    }
}

TEST(QFunction, VacuumAtOrigin) {
    const ProbeSpec p = ProbeSpec::equal_squeezing(2, 0.0, PassiveUnitary::identity(3));
    EXPECT_NEAR(q_function_value(p, CVector::Zero(3)), std::pow(std::numbers::pi, -3), 1e-15);
}

TEST(QFunction, CoherentAtItsMean) {
    Gen g(17);
    const PassiveUnitary u = g.interferometer(InterferometerKind::haar_unitary, 2);
    const ProbeSpec p = two_mode(ModeParams{{0.7, -0.2}, 0.0, 0.0}, ModeParams{{-0.4, 0.5}, 0.0, 0.0}, u);
    EXPECT_NEAR(q_function_value(p, p.output_displacements()), 1.0 / (std::numbers::pi * std::numbers::pi), 1e-14);
    const ProbeSpec plain = two_mode(ModeParams{{0.7, -0.2}, 0.0, 0.0}, ModeParams{{-0.4, 0.5}, 0.0, 0.0});
    EXPECT_NEAR(q_function_value(plain, plain.displacements()), 1.0 / (std::numbers::pi * std::numbers::pi), 1e-14);
}

TEST(QFunction, SqueezedSingleModeMatchesExponentialOracle) {
    const ModeParams sq{{0.0, 0.0}, 0.5, 0.0};
    const ProbeSpec p = two_mode(sq, ModeParams{});
    const CVector psi = testing::expm_state(sq, 160).head(60);
    const double expected = testing::single_mode_q(psi, 0.3) / std::numbers::pi;
    CVector alpha = CVector::Zero(2);
    alpha(0) = 0.3;
    EXPECT_NEAR(q_function_value(p, alpha), expected, 1e-12 * expected);
}

TEST(QFunctionProperty, MatchesFockAmplitudes) {
    Gen g(271);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<ModeParams> modes{g.mode(1.0, 2.0), g.mode(1.0, 2.0)};
        const PassiveUnitary u =
            g.interferometer(trial % 2 ? InterferometerKind::haar_unitary : InterferometerKind::haar_orthogonal, 2);
        const ProbeSpec p(modes, u);
        const MultimodeFockState state = MultimodeFockState::from_probe(p, auto_total_cutoff(p, 1e-12), 1e-12);
        for (int s = 0; s < 5; ++s) {
            CVector alpha(2);
            alpha << g.in_disk(2.0), g.in_disk(2.0);
            const double ref = std::norm(state.coherent_overlap(alpha)) / (std::numbers::pi * std::numbers::pi);
            const double q = q_function_value(p, alpha);
            ASSERT_GE(q, 0.0);
            ASSERT_TRUE(testing::close(q, ref, 1e-6, 1e-14)) << "trial " << trial << " q=" << q << " ref=" << ref;
        }
    }
}

TEST(QFunctionProperty, MonteCarloNormalization) {
    Gen g(1009);
    for (int trial = 0; trial < 4; ++trial) {
        std::vector<ModeParams> modes{g.mode(0.8, 1.0), g.mode(0.8, 1.0)};
        const ProbeSpec p(modes, g.interferometer(InterferometerKind::haar_unitary, 2));
        const QMatrices q = build_q_matrices(p);
        double widest = 0.0;
        for (const auto &m : modes) widest = std::max(widest, m.xi_mag);
        // isotropic Gaussian proposal, wider than Q in every direction
        const double sigma = std::sqrt(1.5 * (std::exp(2.0 * widest) + 1.0) / 4.0);
        const CVector centre = p.output_displacements();
        const int samples = 1'000'000;
        double sum = 0.0;
        double min_q = 1.0;
        CVector alpha(2);
        for (int s = 0; s < samples; ++s) {
            double log_p = 0.0;
            for (Index k = 0; k < 2; ++k) {
                const double x = sigma * g.normal();
                const double y = sigma * g.normal();
                alpha(k) = centre(k) + cplx(x, y);
                log_p += -(x * x + y * y) / (2.0 * sigma * sigma) - std::log(2.0 * std::numbers::pi * sigma * sigma);
            }
            const double value = q_function_value(q, alpha);
            min_q = std::min(min_q, value);
            sum += value / std::exp(log_p);
        }
        EXPECT_GE(min_q, 0.0);
        EXPECT_NEAR(sum / samples, 1.0, 0.01) << "trial " << trial;
    }
}

TEST(QFunction, RejectsWrongLength) {
    const ProbeSpec p = ProbeSpec::equal_squeezing(1, 0.3, PassiveUnitary::identity(2));
    EXPECT_THROW(q_function_value(p, CVector::Zero(3)), DimensionMismatch);
}

}  // namespace
}  // namespace qfimkit
