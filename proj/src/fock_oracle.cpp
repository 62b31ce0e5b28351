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

#include "qfimkit/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>

#include "qfimkit/errors.hpp"

namespace qfimkit {

namespace {

constexpr Index kMaxCutoff = 200'000;

Index rule_cutoff(double energy) {
    return std::max<Index>(32, static_cast<Index>(std::ceil(12.0 * (energy + 1.0))));
}

// |<n|beta;xi>|^2 for n = 0.. until the tail mass drops below `tail`.
std::vector<double> number_distribution(const ModeParams &mode, double tail) {
    const cplx s = std::polar(std::tanh(mode.xi_mag), mode.theta);
    const cplx drive = mode.beta + std::conj(mode.beta) * s;
    cplx prev(0.0, 0.0);
    cplx cur = std::exp(-0.5 * std::norm(mode.beta) - 0.5 * std::conj(mode.beta) * std::conj(mode.beta) * s) /
               std::sqrt(std::cosh(mode.xi_mag));
    std::vector<double> p;
    double mass = 0.0;
    for (Index n = 0; n <= kMaxCutoff; ++n) {
        p.push_back(std::norm(cur));
        mass += p.back();
        if (1.0 - mass <= tail) return p;
        const double dn = static_cast<double>(n);
        const cplx next = (drive * cur - s * std::sqrt(dn) * prev) / std::sqrt(dn + 1.0);
        prev = cur;
        cur = next;
    }
    throw CutoffTooSmall("number_distribution: no cutoff below " + std::to_string(kMaxCutoff) +
                             " reaches the truncation budget",
                         mass);
}

}  // namespace

Index auto_cutoff(const ModeParams &mode, double budget) {
    mode.validate();
    const auto needed = static_cast<Index>(number_distribution(mode, budget).size()) - 1;
    return std::max(rule_cutoff(mode.energy()), needed);
}

FockVector squeezed_displaced_amplitudes(const ModeParams &mode, Index cutoff, double budget) {
    if (cutoff < 0) {
        throw DomainError("squeezed_displaced_amplitudes: negative cutoff");
    }
    mode.validate();
    const cplx s = std::polar(std::tanh(mode.xi_mag), mode.theta);
    const cplx beta = mode.beta;
    const cplx drive = beta + std::conj(beta) * s;

    FockVector out;
    out.cutoff = cutoff;
    out.amplitudes = CVector::Zero(cutoff + 1);
    out.amplitudes(0) = std::exp(-0.5 * std::norm(beta) - 0.5 * std::conj(beta) * std::conj(beta) * s) /
                        std::sqrt(std::cosh(mode.xi_mag));
    if (cutoff >= 1) out.amplitudes(1) = drive * out.amplitudes(0);
    for (Index n = 1; n < cutoff; ++n) {
        const double dn = static_cast<double>(n);
        out.amplitudes(n + 1) =
            (drive * out.amplitudes(n) - s * std::sqrt(dn) * out.amplitudes(n - 1)) / std::sqrt(dn + 1.0);
    }

    const double norm = out.norm_squared();
    if (1.0 - norm > budget) {
        throw CutoffTooSmall("squeezed_displaced_amplitudes: cutoff " + std::to_string(cutoff) +
                                 " keeps squared norm " + std::to_string(norm),
                             norm);
    }
    return out;
}

FockVector apply_phase(const FockVector &state, double phase) {
    FockVector out = state;
    for (Index n = 0; n <= state.cutoff; ++n) {
        out.amplitudes(n) *= std::polar(1.0, phase * static_cast<double>(n));
    }
    return out;
}

MomentTable MomentTable::from_amplitudes(const FockVector &state) {
    // w_q = a^†q psi on a basis two levels larger, so nothing is clipped.
    const Index size = state.cutoff + 3;
    std::array<CVector, 3> raised;
    raised[0] = CVector::Zero(size);
    raised[0].head(state.cutoff + 1) = state.amplitudes;
    for (int q = 1; q < 3; ++q) {
        raised[q] = CVector::Zero(size);
        for (Index n = 0; n + 1 < size; ++n) {
            raised[q](n + 1) = std::sqrt(static_cast<double>(n + 1)) * raised[q - 1](n);
        }
    }
    MomentTable table;
    for (int p = 0; p < 3; ++p) {
        for (int q = 0; q < 3; ++q) {
            // <a^p a^†q> = <a^†p psi | a^†q psi>
            table.values_[static_cast<std::size_t>(3 * p + q)] = raised[p].dot(raised[q]);
        }
    }
    return table;
}

ProbeMoments probe_moments(const ProbeSpec &probe, std::optional<Index> cutoff) {
    ProbeMoments out;
    for (const auto &mode : probe.modes()) {
        // fourth moments weight the tail by n^4, so keep twice the norm-rule cutoff
        const Index c = cutoff.value_or(2 * auto_cutoff(mode));
        out.tables.push_back(MomentTable::from_amplitudes(squeezed_displaced_amplitudes(mode, c)));
    }
    out.output_map = probe.interferometer().matrix().values().adjoint();
    return out;
}

ProbeMoments apply_phases(const ProbeMoments &moments, const RVector &phases) {
    const Index n = moments.mode_count();
    if (phases.size() != n - 1) {
        throw DimensionMismatch("apply_phases: expected " + std::to_string(n - 1) + " phases");
    }
    ProbeMoments out = moments;
    out.output_map.row(0) *= std::polar(1.0, -phases.sum());
    for (Index i = 1; i < n; ++i) out.output_map.row(i) *= std::polar(1.0, phases(i - 1));
    return out;
}

namespace {

// <prod_k a_k^{p_k} a_k^†{q_k}> on the product input state.
cplx product_expectation(const std::vector<MomentTable> &tables, const std::vector<int> &p,
                         const std::vector<int> &q) {
    cplx acc(1.0, 0.0);
    for (std::size_t k = 0; k < tables.size(); ++k) {
        if (p[k] != 0 || q[k] != 0) acc *= tables[k].at(p[k], q[k]);
    }
    return acc;
}

// <a_i a_i^†> for the output modes.
CVector output_antinormal_pairs(const ProbeMoments &pm) {
    const Index n = pm.mode_count();
    const Eigen::MatrixXcd &u = pm.output_map;
    Eigen::MatrixXcd pair(n, n);
    std::vector<int> p(static_cast<std::size_t>(n)), q(static_cast<std::size_t>(n));
    for (Index k = 0; k < n; ++k) {
        for (Index l = 0; l < n; ++l) {
            std::fill(p.begin(), p.end(), 0);
            std::fill(q.begin(), q.end(), 0);
            ++p[static_cast<std::size_t>(k)];
            ++q[static_cast<std::size_t>(l)];
            pair(k, l) = product_expectation(pm.tables, p, q);
        }
    }
    CVector out(n);
    for (Index i = 0; i < n; ++i) out(i) = u.row(i) * pair * u.row(i).adjoint();
    return out;
}

}  // namespace

RVector contracted_means(const ProbeMoments &moments) {
    return output_antinormal_pairs(moments).real().array() - 1.0;
}

CovMatrixH contracted_moments(const ProbeMoments &pm) {
    const Index n = pm.mode_count();
    if (pm.output_map.rows() != n || pm.output_map.cols() != n) {
        throw DimensionMismatch("contracted_moments: output map does not match mode count");
    }
    const Eigen::MatrixXcd &u = pm.output_map;
    const CVector pair = output_antinormal_pairs(pm);

    // quad[k,l,m,r] = <a_k a_l a_m^† a_r^†> on the input state
    const auto sz = static_cast<std::size_t>(n);
    std::vector<cplx> quad(sz * sz * sz * sz);
    std::vector<int> p(sz), q(sz);
    auto at = [n](Index k, Index l, Index m, Index r) {
        return static_cast<std::size_t>(((k * n + l) * n + m) * n + r);
    };
    for (Index k = 0; k < n; ++k)
        for (Index l = 0; l < n; ++l)
            for (Index m = 0; m < n; ++m)
                for (Index r = 0; r < n; ++r) {
                    std::fill(p.begin(), p.end(), 0);
                    std::fill(q.begin(), q.end(), 0);
                    ++p[static_cast<std::size_t>(k)];
                    ++p[static_cast<std::size_t>(l)];
                    ++q[static_cast<std::size_t>(m)];
                    ++q[static_cast<std::size_t>(r)];
                    quad[at(k, l, m, r)] = product_expectation(pm.tables, p, q);
                }

    Eigen::MatrixXcd h(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            cplx x(0.0, 0.0);
            for (Index k = 0; k < n; ++k)
                for (Index l = 0; l < n; ++l) {
                    const cplx w = u(i, k) * u(j, l);
                    for (Index m = 0; m < n; ++m)
                        for (Index r = 0; r < n; ++r) {
                            x += w * std::conj(u(i, m)) * std::conj(u(j, r)) * quad[at(k, l, m, r)];
                        }
                }
            // n_i n_j = a_i a_j a_i^† a_j^† - a_i a_i^† - a_j a_j^† - delta_ij a_i a_i^† + 1
            const cplx nn = x - pair(i) - pair(j) - (i == j ? pair(i) : cplx(0.0)) + 1.0;
            h(i, j) = nn - (pair(i) - 1.0) * (pair(j) - 1.0);
        }
    }
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if (h.imag().cwiseAbs().maxCoeff() > kMaxImagResidue * scale) {
        throw NumericalConsistencyError("contracted_moments: covariance has an imaginary part");
    }
    const Eigen::MatrixXd real = h.real();
    return CovMatrixH(RealSymmetricMatrix(0.5 * (real + real.transpose())), CovConvention::raw_covariance);
}

CovMatrixH contracted_moments(const ProbeSpec &probe, std::optional<Index> cutoff) {
    return contracted_moments(probe_moments(probe, cutoff));
}

Index auto_total_cutoff(const ProbeSpec &probe, double budget) {
    // Total photon number is conserved by the interferometer, so its distribution is the
    // convolution of the single-mode ones.
    const double per_mode = 0.1 * budget / static_cast<double>(probe.mode_count());
    std::vector<double> total{1.0};
    for (const auto &mode : probe.modes()) {
        const std::vector<double> p = number_distribution(mode, per_mode);
        std::vector<double> next(total.size() + p.size() - 1, 0.0);
        for (std::size_t a = 0; a < total.size(); ++a)
            for (std::size_t b = 0; b < p.size(); ++b) next[a + b] += total[a] * p[b];
        total = std::move(next);
    }
    double mass = 0.0;
    Index needed = static_cast<Index>(total.size()) - 1;
    for (std::size_t t = 0; t < total.size(); ++t) {
        mass += total[t];
        if (1.0 - mass <= budget) {
            needed = static_cast<Index>(t);
            break;
        }
    }
    return std::max(rule_cutoff(total_energy(probe)), needed);
}

MultimodeFockState MultimodeFockState::from_probe(const ProbeSpec &probe, Index total_cutoff, double budget,
                                                  Index max_dim) {
    const Index modes = probe.mode_count();
    if (total_cutoff < 0) {
        throw DomainError("MultimodeFockState: negative cutoff");
    }

    // Basis: all occupations with sum <= total_cutoff.
    MultimodeFockState state;
    state.modes_ = modes;
    state.total_cutoff_ = total_cutoff;
    std::vector<int> occ(static_cast<std::size_t>(modes), 0);
    std::unordered_map<std::uint64_t, Index> lookup;
    const auto base = static_cast<std::uint64_t>(total_cutoff + 1);
    auto key_of = [&](const std::vector<int> &o) {
        std::uint64_t key = 0;
        for (int v : o) key = key * base + static_cast<std::uint64_t>(v);
        return key;
    };
    auto enumerate = [&](auto &&self, Index mode, int remaining) -> void {
        if (mode == modes) {
            const auto index = static_cast<Index>(lookup.size());
            if (index >= max_dim) {
                throw DomainError("MultimodeFockState: basis exceeds " + std::to_string(max_dim) + " states");
            }
            lookup.emplace(key_of(occ), index);
            state.occupations_.insert(state.occupations_.end(), occ.begin(), occ.end());
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            occ[static_cast<std::size_t>(mode)] = v;
            self(self, mode + 1, remaining - v);
        }
        occ[static_cast<std::size_t>(mode)] = 0;
    };
    enumerate(enumerate, 0, static_cast<int>(total_cutoff));
    const auto dim = static_cast<Index>(lookup.size());

    // raise[s * modes + i] = index of s with one more photon in mode i, or -1.
    std::vector<Index> raise(static_cast<std::size_t>(dim * modes), -1);
    std::vector<double> raise_factor(static_cast<std::size_t>(dim * modes), 0.0);
    for (Index s = 0; s < dim; ++s) {
        std::vector<int> o(state.occupations_.begin() + s * modes, state.occupations_.begin() + (s + 1) * modes);
        int total = 0;
        for (int v : o) total += v;
        if (total >= total_cutoff) continue;
        for (Index i = 0; i < modes; ++i) {
            auto up = o;
            ++up[static_cast<std::size_t>(i)];
            const auto slot = static_cast<std::size_t>(s * modes + i);
            raise[slot] = lookup.at(key_of(up));
            raise_factor[slot] = std::sqrt(static_cast<double>(up[static_cast<std::size_t>(i)]));
        }
    }

    // a_in_k^† = sum_i conj(A_ki) a_out_i^†
    const Eigen::MatrixXcd &a = probe.interferometer().matrix().values();
    CVector psi = CVector::Zero(dim);
    psi(lookup.at(0)) = 1.0;
    for (Index k = 0; k < modes; ++k) {
        const FockVector single =
            squeezed_displaced_amplitudes(probe.modes()[static_cast<std::size_t>(k)], total_cutoff, 1.0);
        CVector term = psi;
        CVector acc = single.amplitudes(0) * psi;
        for (Index n = 1; n <= total_cutoff; ++n) {
            CVector next = CVector::Zero(dim);
            const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
            for (Index s = 0; s < dim; ++s) {
                const cplx v = term(s);
                if (v == cplx(0.0, 0.0)) continue;
                for (Index i = 0; i < modes; ++i) {
                    const auto slot = static_cast<std::size_t>(s * modes + i);
                    if (raise[slot] < 0) continue;
                    next(raise[slot]) += std::conj(a(k, i)) * raise_factor[slot] * inv_sqrt_n * v;
                }
            }
            term = std::move(next);
            acc += single.amplitudes(n) * term;
        }
        psi = std::move(acc);
    }
    state.amplitudes_ = std::move(psi);

    const double norm = state.norm_squared();
    if (1.0 - norm > budget) {
        throw CutoffTooSmall("MultimodeFockState: total cutoff " + std::to_string(total_cutoff) +
                                 " keeps squared norm " + std::to_string(norm),
                             norm);
    }
    return state;
}

MultimodeFockState MultimodeFockState::normalized() const {
    MultimodeFockState out = *this;
    out.amplitudes_ /= std::sqrt(norm_squared());
    return out;
}

MultimodeFockState MultimodeFockState::with_phases(const RVector &phases) const {
    if (phases.size() != modes_ - 1) {
        throw DimensionMismatch("MultimodeFockState::with_phases: expected " + std::to_string(modes_ - 1) +
                                " phases");
    }
    MultimodeFockState out = *this;
    for (Index s = 0; s < dim(); ++s) {
        double angle = 0.0;
        for (Index i = 1; i < modes_; ++i) {
            angle += phases(i - 1) * static_cast<double>(occupation(s, i) - occupation(s, 0));
        }
        out.amplitudes_(s) *= std::polar(1.0, angle);
    }
    return out;
}

CovMatrixH MultimodeFockState::covariances() const {
    const double norm = norm_squared();
    RVector mean = RVector::Zero(modes_);
    Eigen::MatrixXd second = Eigen::MatrixXd::Zero(modes_, modes_);
    for (Index s = 0; s < dim(); ++s) {
        const double w = std::norm(amplitudes_(s)) / norm;
        for (Index i = 0; i < modes_; ++i) {
            mean(i) += w * occupation(s, i);
            for (Index j = 0; j < modes_; ++j) second(i, j) += w * occupation(s, i) * occupation(s, j);
        }
    }
    return CovMatrixH(RealSymmetricMatrix(second - mean * mean.transpose()), CovConvention::raw_covariance);
}

cplx MultimodeFockState::coherent_overlap(const CVector &alpha) const {
    if (alpha.size() != modes_) {
        throw DimensionMismatch("coherent_overlap: alpha has the wrong length");
    }
    // bra[i][n] = e^{-|alpha_i|^2/2} conj(alpha_i)^n / sqrt(n!)
    std::vector<CVector> bra(static_cast<std::size_t>(modes_));
    for (Index i = 0; i < modes_; ++i) {
        CVector &b = bra[static_cast<std::size_t>(i)];
        b.resize(total_cutoff_ + 1);
        b(0) = std::exp(-0.5 * std::norm(alpha(i)));
        for (Index n = 1; n <= total_cutoff_; ++n) {
            b(n) = b(n - 1) * std::conj(alpha(i)) / std::sqrt(static_cast<double>(n));
        }
    }
    cplx acc(0.0, 0.0);
    for (Index s = 0; s < dim(); ++s) {
        cplx w = amplitudes_(s);
        for (Index i = 0; i < modes_; ++i) w *= bra[static_cast<std::size_t>(i)](occupation(s, i));
        acc += w;
    }
    return acc;
}

CVector MultimodeFockState::apply_generator(Index i, const CVector &psi) const {
    if (i < 1 || i >= modes_) {
        throw DomainError("apply_generator: phase index must lie in 1..d");
    }
    CVector out(psi.size());
    for (Index s = 0; s < dim(); ++s) {
        out(s) = static_cast<double>(occupation(s, i) - occupation(s, 0)) * psi(s);
    }
    return out;
}

double attainability_check(const ProbeSpec &probe, const RVector &phases, Index i, Index j,
                           std::optional<Index> total_cutoff) {
    const Index d = probe.phase_count();
    if (i < 1 || j < 1 || i > d || j > d) {
        throw DomainError("attainability_check: phase indices must lie in 1..d");
    }
    if (phases.size() != d) {
        throw DimensionMismatch("attainability_check: expected " + std::to_string(d) + " phases");
    }
    if (i == j) return 0.0;

    const MultimodeFockState phi =
        MultimodeFockState::from_probe(probe, total_cutoff.value_or(auto_total_cutoff(probe)))
            .normalized()
            .with_phases(phases);
    const CVector &ket = phi.amplitudes();
    const CVector g_i = phi.apply_generator(i, ket);
    const CVector g_j = phi.apply_generator(j, ket);
    const cplx two_i(0.0, 2.0);

    // L_k v = 2i (g_k |Phi><Phi|v> - |Phi><Phi|g_k v>)
    auto sld = [&](const CVector &g_ket, const CVector &v) -> CVector {
        return two_i * (g_ket * ket.dot(v) - ket * g_ket.dot(v));
    };
    const cplx ij = ket.dot(sld(g_i, sld(g_j, ket)));
    const cplx ji = ket.dot(sld(g_j, sld(g_i, ket)));
    return std::abs(ij - ji);
}

}  // namespace qfimkit
