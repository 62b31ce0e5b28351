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
 * Seeded sampling of interferometers and probes for randomized verification.
 *
 * Interferometers come from QR of Gaussian random matrices with the phase of
 * R's diagonal absorbed into Q, which is Haar distributed; orthogonal draws
 * flip one column when needed so the determinant is +1.
 */

#pragma once

#include <cstdint>
#include <random>

#include "qfimkit/gaussian_state.hpp"

namespace qfimkit {

using Rng = std::mt19937_64;

enum class InterferometerKind { identity, haar_orthogonal, haar_unitary };

ComplexMatrix haar_unitary(Index n, Rng &rng);
Eigen::MatrixXd haar_special_orthogonal(Index n, Rng &rng);
PassiveUnitary random_interferometer(InterferometerKind kind, Index n, Rng &rng);

struct ProbeSampling {
    Index min_modes = 2;
    Index max_modes = 3;
    double max_xi = 0.8;
    double max_beta = 1.0;
    bool random_theta = true;
    /// When false each draw picks Haar-orthogonal or Haar-unitary with equal odds.
    bool orthogonal_only = false;
};

/// Draws |beta| uniformly in [0, max_beta] with a uniform phase.
ProbeSpec random_probe(const ProbeSampling &sampling, Rng &rng);

/// Uniform phases in [-pi, pi).
RVector random_phases(Index count, Rng &rng);

}  // namespace qfimkit
