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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "qfimkit/fock_oracle.hpp"
#include "qfimkit/optimizer.hpp"
#include "qfimkit/qfim.hpp"
#include "qfimkit/random_probe.hpp"
#include "qfimkit/scenario.hpp"

namespace {

using namespace qfimkit;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// |a - b| / max(|b|, floor / rel)
double scaled_gap(double a, double b, double rel, double floor) {
    return std::abs(a - b) / std::max(std::abs(b), floor / rel);
}

Outcome oracle_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(42);
    const ProbeSampling sampling;
    double worst = 0.0;
    int unitary = 0, orthogonal = 0, three_mode = 0;
    for (int k = 0; k < 200; ++k) {
        const ProbeSpec p = random_probe(sampling, rng);
        (p.interferometer().is_orthogonal() ? orthogonal : unitary)++;
        three_mode += p.mode_count() == 3;
        const CovMatrixH closed = photon_covariances(build_q_matrices(p));
        const CovMatrixH oracle = contracted_moments(p);
        for (Index i = 0; i < closed.dim(); ++i)
            for (Index j = 0; j < closed.dim(); ++j)
                worst = std::max(worst, scaled_gap(closed(i, j), oracle(i, j), 1e-6, 1e-8));
    }
    const double elapsed = seconds_since(t0);
    return {worst <= 1e-6 && elapsed < 60.0,
            fmt("200 probes (%d orthogonal, %d unitary, %d three-mode), max rel residual %.3e <= 1e-6, %.3f s < 60 s",
                orthogonal, unitary, three_mode, worst, elapsed)};
}

Outcome m_eigenvalue_law() {
    Rng rng(2);
    std::uniform_real_distribution<double> xi_dist(0.0, 3.0), phase(-3.14159, 3.14159);
    std::uniform_int_distribution<int> modes_dist(2, 6);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const int n = modes_dist(rng);
        std::vector<ModeParams> modes(static_cast<std::size_t>(n));
        std::vector<double> expected;
        for (auto &m : modes) {
            m.xi_mag = xi_dist(rng);
            m.theta = phase(rng);
            expected.push_back((1.0 - std::tanh(m.xi_mag)) / 2.0);
            expected.push_back((1.0 + std::tanh(m.xi_mag)) / 2.0);
        }
        std::sort(expected.begin(), expected.end());
        const QMatrices q = build_q_matrices(ProbeSpec(modes, random_interferometer(InterferometerKind::haar_unitary, n, rng)));
        const RVector ev = hermitian_eigenvalues(q.m_mat);
        for (Index i = 0; i < ev.size(); ++i) worst = std::max(worst, std::abs(ev(i) - expected[static_cast<std::size_t>(i)]));
    }
    return {worst <= 1e-10, fmt("50 squeezing vectors, max eigenvalue deviation %.3e <= 1e-10", worst)};
}

Outcome sherman_morrison_and_trace() {
    Rng rng(3);
    std::uniform_real_distribution<double> logv(-2.0, 3.0);
    std::uniform_int_distribution<Index> dim(1, 64);
    double worst_inv = 0.0, worst_tr = 0.0;
    for (int k = 0; k < 200; ++k) {
        const Index d = k < 64 ? k + 1 : dim(rng);
        RVector diag(d);
        for (Index i = 0; i < d; ++i) diag(i) = std::exp(logv(rng));
        const double h00 = std::exp(logv(rng));
        const Eigen::MatrixXd dense = Eigen::MatrixXd(diag.asDiagonal()) + h00 * Eigen::MatrixXd::Ones(d, d);
        const Qfim qfim(RealSymmetricMatrix(dense), StructuredQfim{diag, h00});
        const Eigen::MatrixXd ref = dense.fullPivLu().inverse();
        worst_inv = std::max(worst_inv, (qfim_inverse(qfim).values() - ref).norm() / ref.norm());
        worst_tr = std::max(worst_tr, std::abs(trace_inverse(qfim) - ref.trace()) / std::abs(ref.trace()));
    }
    return {worst_inv <= 1e-10 && worst_tr <= 1e-10,
            fmt("200 structured QFIMs d<=64, inverse rel %.3e, trace rel %.3e <= 1e-10", worst_inv, worst_tr)};
}

Outcome attainability() {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(4);
    ProbeSampling sampling;
    sampling.min_modes = 3;
    sampling.max_modes = 3;
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const ProbeSpec p = random_probe(sampling, rng);
        const RVector phases = random_phases(p.phase_count(), rng);
        worst = std::max(worst, attainability_check(p, phases, 1, 2));
    }
    return {worst <= 1e-8, fmt("50 three-mode probes, max |<[L_i,L_j]>| %.3e <= 1e-8, %.2f s", worst, seconds_since(t0))};
}

Outcome phase_independence() {
    Rng rng(5);
    const ProbeSampling sampling;
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const ProbeSpec p = random_probe(sampling, rng);
        const ProbeMoments pm = probe_moments(p);
        const Eigen::MatrixXd base = contracted_moments(pm).entries().values();
        for (int s = 0; s < 20; ++s) {
            const Eigen::MatrixXd h = contracted_moments(apply_phases(pm, random_phases(p.phase_count(), rng))).entries().values();
            worst = std::max(worst, (h - base).cwiseAbs().maxCoeff());
        }
    }
    return {worst <= 1e-9, fmt("50 probes x 20 phase vectors, max |dh| %.3e <= 1e-9", worst)};
}

Outcome equation_chain() {
    Rng rng(6);
    double worst_dense = 0.0, worst_forms = 0.0;
    for (Index d = 1; d <= 10; ++d) {
        for (double xi : {0.1, 0.5, 1.0, 1.5}) {
            const ProbeSpec p = ProbeSpec::equal_squeezing(d, xi, random_interferometer(InterferometerKind::haar_orthogonal, d + 1, rng));
            const Qfim qfim = probe_qfim(p);
            const double s2 = std::sinh(2.0 * xi);
            const Eigen::MatrixXd expected = 2.0 * s2 * s2 * (Eigen::MatrixXd::Identity(d, d) + Eigen::MatrixXd::Ones(d, d));
            worst_dense = std::max(worst_dense, (qfim.dense().values() - expected).cwiseAbs().maxCoeff());
            const double sh = std::sinh(xi);
            const EnergyBudget b{static_cast<double>(d + 1) * sh * sh, d};
            const Eigen::MatrixXd via_sim = h_sim(b).dense().values();
            worst_forms = std::max(worst_forms, std::abs(h_sim_factor_squeezing(b) - h_sim_factor_energy(b)));
            worst_forms = std::max(worst_forms, (via_sim - expected).cwiseAbs().maxCoeff());
        }
    }
    return {worst_dense <= 1e-9 && worst_forms <= 1e-10,
            fmt("d=1..10, 4 squeezings: dense vs optimal form %.3e <= 1e-9, squeezing vs energy form %.3e <= 1e-10",
                worst_dense, worst_forms)};
}

Outcome ratio_law() {
    double worst_fp = 0.0, worst_bound = 0.0, worst_d1 = 0.0;
    for (Index d : {1, 2, 5, 10, 25}) {
        for (double s : {0.1, 1.0, 5.0}) {
            const double xi = std::asinh(std::sqrt(s));
            const double r = ratio_r_closed_form(d, xi);
            worst_fp = std::max(worst_fp, std::abs(ratio_r_first_principles(d, xi) - r));
            const double lower = (1.0 + 1.0 / static_cast<double>(d)) / 2.0;
            worst_bound = std::max({worst_bound, lower - r, r - 1.0});
            if (d == 1) worst_d1 = std::max(worst_d1, std::abs(r - 1.0));
        }
    }
    const double sat = ratio_r_limit(5.0) - 0.5;
    const bool pass = worst_fp <= 1e-9 && worst_bound <= 0.0 && worst_d1 <= 1e-15 && sat <= 1e-4;
    return {pass, fmt("trace ratio vs closed form %.3e <= 1e-9, bound violation %.3e <= 0, |R(d=1)-1| %.3e <= 1e-15, "
                      "R_lim(5)-1/2 %.3e <= 1e-4",
                      worst_fp, std::max(0.0, worst_bound), worst_d1, sat)};
}

Outcome allocation_grid() {
    int beaten = 0, grids = 0;
    double worst_end = 0.0;
    for (Index d : {1, 2, 5, 10}) {
        for (double e_total : {0.01, 0.5, 2.0, 11.0, 250.0}) {
            const AllocationResult r = optimize_allocation({e_total, d});
            for (const GridEvidence &g : r.grid) {
                ++grids;
                beaten += g.interior_beats_endpoint;
            }
        }
    }
    for (double e : {0.0, 0.01, 0.5, 1.0, 3.0, 40.0, 1000.0}) {
        const double top = 8.0 * e * (e + 1.0);
        worst_end = std::max(worst_end, std::abs(h_of_allocation(e, 0.0, 0.0) - top) / std::max(1.0, top));
        worst_end = std::max(worst_end, std::abs(h_of_allocation(e, e, 0.0) - 4.0 * e) / std::max(1.0, 4.0 * e));
    }
    return {beaten == 0 && worst_end <= 1e-12,
            fmt("%d per-mode 101x64 grids, %d interior winners; endpoint deviation %.3e <= 1e-12", grids, beaten, worst_end)};
}

Outcome figure_scans() {
    std::ostringstream sink;
    const ScenarioReport ratio = run_scenario(parse_config(R"({"mode":"ratio-scan"})"), sink);
    const ScenarioReport rlim = run_scenario(parse_config(R"({"mode":"rlim-scan"})"), sink);
    std::string detail;
    bool pass = true;
    for (const ScenarioReport *rep : {&ratio, &rlim}) {
        for (const Check &c : rep->checks) {
            pass = pass && c.pass;
            detail += fmt("%s:%s=%s ", rep->scenario.c_str(), c.name.c_str(), c.pass ? "ok" : "FAILED");
        }
    }
    return {pass, detail};
}

Outcome generating_function_path() {
    Rng rng(10);
    const ProbeSampling sampling;
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const ProbeSpec p = random_probe(sampling, rng);
        const QMatrices q = build_q_matrices(p);
        const CovMatrixH h = photon_covariances(q);
        for (Index i = 0; i < h.dim(); ++i)
            for (Index j = i; j < h.dim(); ++j) {
                const double cov = moments_via_generating_function(q, i, j).covariance();
                worst = std::max(worst, std::abs(cov - h(i, j)) / std::max(1.0, std::abs(h(i, j))));
            }
    }
    return {worst <= 1e-4, fmt("20 probes, max rel deviation %.3e <= 1e-4", worst)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria = {
        {"oracle equivalence", oracle_equivalence},
        {"M eigenvalue law", m_eigenvalue_law},
        {"Sherman-Morrison and trace", sherman_morrison_and_trace},
        {"attainability", attainability},
        {"phase independence", phase_independence},
        {"equation consistency chain", equation_chain},
        {"ratio law", ratio_law},
        {"allocation grid", allocation_grid},
        {"figure scans", figure_scans},
        {"generating-function cross-path", generating_function_path},
    };
    int failed = 0;
    int index = 0;
    for (const auto &[name, run] : criteria) {
        ++index;
        Outcome o;
        try {
            o = run();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
