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

#include "qfimkit/random_probe.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace qfimkit {

namespace {

template <typename Matrix>
Matrix fix_qr_phases(const Matrix &z) {
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().template triangularView<Eigen::Upper>();
    for (Index c = 0; c < q.cols(); ++c) {
        const auto diag = r(c, c);
        const double mag = std::abs(diag);
        if (mag > 0.0) q.col(c) *= diag / mag;
    }
    return q;
}

}  // namespace

ComplexMatrix haar_unitary(Index n, Rng &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd z(n, n);
    for (Index r = 0; r < n; ++r) {
        for (Index c = 0; c < n; ++c) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            z(r, c) = cplx(re, im);
        }
    }
    return ComplexMatrix(fix_qr_phases(z));
}

Eigen::MatrixXd haar_special_orthogonal(Index n, Rng &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd z(n, n);
    for (Index r = 0; r < n; ++r) {
        for (Index c = 0; c < n; ++c) z(r, c) = gauss(rng);
    }
    Eigen::MatrixXd q = fix_qr_phases(z);
    if (q.determinant() < 0.0) q.col(0) *= -1.0;
    return q;
}

PassiveUnitary random_interferometer(InterferometerKind kind, Index n, Rng &rng) {
    switch (kind) {
        case InterferometerKind::identity:
            return PassiveUnitary::identity(n);
        case InterferometerKind::haar_orthogonal:
            return PassiveUnitary::orthogonal(haar_special_orthogonal(n, rng));
        case InterferometerKind::haar_unitary:
            break;
    }
    return PassiveUnitary(haar_unitary(n, rng));
}

ProbeSpec random_probe(const ProbeSampling &sampling, Rng &rng) {
    std::uniform_int_distribution<Index> mode_count(sampling.min_modes, sampling.max_modes);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const Index n = mode_count(rng);
    std::vector<ModeParams> modes(static_cast<std::size_t>(n));
    for (auto &m : modes) {
        const double mag = sampling.max_beta * unit(rng);
        const double arg = 2.0 * std::numbers::pi * unit(rng);
        m.beta = std::polar(mag, arg);
        m.xi_mag = sampling.max_xi * unit(rng);
        m.theta = sampling.random_theta ? 2.0 * std::numbers::pi * unit(rng) : 0.0;
    }
    const bool orthogonal = sampling.orthogonal_only || unit(rng) < 0.5;
    auto kind = orthogonal ? InterferometerKind::haar_orthogonal : InterferometerKind::haar_unitary;
    return ProbeSpec(std::move(modes), random_interferometer(kind, n, rng));
}

RVector random_phases(Index count, Rng &rng) {
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    RVector phases(count);
    for (Index i = 0; i < count; ++i) phases(i) = angle(rng);
    return phases;
}

}  // namespace qfimkit
