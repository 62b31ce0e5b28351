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

#include "qfimkit/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "qfimkit/errors.hpp"
#include "qfimkit/fock_oracle.hpp"
#include "qfimkit/qfim.hpp"
#include "qfimkit/random_probe.hpp"

namespace qfimkit {

using nlohmann::json;

namespace {

constexpr double kOracleRelTol = 1e-6;
constexpr double kOracleAbsFloor = 1e-8;
constexpr double kRatioTol = 1e-9;
constexpr double kFormTol = 1e-10;
constexpr double kEndpointTol = 1e-12;
constexpr double kBoundSlack = 1e-15;
constexpr Index kMaxScanPoints = 1'000'000;

// ---------------------------------------------------------------- config parsing

void require_object(const json &j, std::string_view where, std::initializer_list<std::string_view> allowed) {
    if (!j.is_object()) throw ConfigError(std::string(where) + ": expected an object");
    for (const auto &item : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
            throw ConfigError(std::string(where) + ": unknown key '" + item.key() + "'");
        }
    }
}

double get_number(const json &j, std::string_view where) {
    if (!j.is_number()) throw ConfigError(std::string(where) + ": expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ConfigError(std::string(where) + ": not finite");
    return v;
}

std::uint64_t get_unsigned(const json &j, std::string_view where) {
    if (!j.is_number_unsigned()) throw ConfigError(std::string(where) + ": expected a non-negative integer");
    return j.get<std::uint64_t>();
}

Index get_index(const json &j, std::string_view where) {
    const std::uint64_t v = get_unsigned(j, where);
    if (v > static_cast<std::uint64_t>(std::numeric_limits<int>::max())) {
        throw ConfigError(std::string(where) + ": value too large");
    }
    return static_cast<Index>(v);
}

cplx get_complex(const json &j, std::string_view where) {
    if (j.is_number()) return {get_number(j, where), 0.0};
    if (j.is_array() && j.size() == 2) return {get_number(j[0], where), get_number(j[1], where)};
    throw ConfigError(std::string(where) + ": expected a number or [re, im]");
}

Eigen::MatrixXd get_matrix(const json &j, std::string_view where) {
    if (!j.is_array() || j.empty()) throw ConfigError(std::string(where) + ": expected a non-empty array of rows");
    const auto rows = static_cast<Index>(j.size());
    Eigen::MatrixXd m(rows, rows);
    for (Index r = 0; r < rows; ++r) {
        const json &row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Index>(row.size()) != rows) {
            throw ConfigError(std::string(where) + ": matrix must be square");
        }
        for (Index c = 0; c < rows; ++c) m(r, c) = get_number(row[static_cast<std::size_t>(c)], where);
    }
    return m;
}

ScanRange parse_range(const json &j, std::string_view where) {
    require_object(j, where, {"start", "stop", "step"});
    if (!j.contains("start") || !j.contains("stop") || !j.contains("step")) {
        throw ConfigError(std::string(where) + ": needs start, stop and step");
    }
    return {get_number(j["start"], where), get_number(j["stop"], where), get_number(j["step"], where)};
}

PassiveUnitary parse_interferometer(const json &j, Index modes, const std::optional<std::uint64_t> &seed) {
    require_object(j, "interferometer", {"kind", "matrix", "real", "imag"});
    if (!j.contains("kind") || !j["kind"].is_string()) throw ConfigError("interferometer: needs a kind");
    const std::string kind = j["kind"].get<std::string>();
    try {
        if (kind == "identity") return PassiveUnitary::identity(modes);
        if (kind == "orthogonal") {
            if (!j.contains("matrix")) throw ConfigError("interferometer: orthogonal needs 'matrix'");
            return PassiveUnitary::orthogonal(get_matrix(j["matrix"], "interferometer.matrix"));
        }
        if (kind == "unitary") {
            if (!j.contains("real")) throw ConfigError("interferometer: unitary needs 'real'");
            const Eigen::MatrixXd re = get_matrix(j["real"], "interferometer.real");
            const Eigen::MatrixXd im =
                j.contains("imag") ? get_matrix(j["imag"], "interferometer.imag") : Eigen::MatrixXd::Zero(re.rows(), re.cols());
            if (im.rows() != re.rows()) throw ConfigError("interferometer: real and imag sizes differ");
            Eigen::MatrixXcd a(re.rows(), re.cols());
            a.real() = re;
            a.imag() = im;
            return PassiveUnitary(ComplexMatrix(a));
        }
        if (kind == "haar_orthogonal" || kind == "haar_unitary") {
            if (!seed) throw ConfigError("interferometer: Haar sampling needs a seed");
            Rng rng(*seed);
            return random_interferometer(
                kind == "haar_orthogonal" ? InterferometerKind::haar_orthogonal : InterferometerKind::haar_unitary,
                modes, rng);
        }
    } catch (const ConfigError &) {
        throw;
    } catch (const Error &e) {
        throw ConfigError(std::string("interferometer: ") + e.what());
    }
    throw ConfigError("interferometer: unknown kind '" + kind + "'");
}

ProbeSpec parse_probe(const json &j, const std::optional<std::uint64_t> &seed) {
    require_object(j, "probe", {"modes", "equal_squeezing", "interferometer"});
    if (j.contains("modes") == j.contains("equal_squeezing")) {
        throw ConfigError("probe: give exactly one of 'modes' and 'equal_squeezing'");
    }
    try {
        if (j.contains("equal_squeezing")) {
            const json &eq = j["equal_squeezing"];
            require_object(eq, "probe.equal_squeezing", {"d", "xi"});
            if (!eq.contains("d") || !eq.contains("xi")) throw ConfigError("probe.equal_squeezing: needs d and xi");
            const Index d = get_index(eq["d"], "probe.equal_squeezing.d");
            if (d < 1) throw ConfigError("probe.equal_squeezing: need d >= 1");
            const PassiveUnitary u = j.contains("interferometer") ? parse_interferometer(j["interferometer"], d + 1, seed)
                                                                  : PassiveUnitary::identity(d + 1);
            return ProbeSpec::equal_squeezing(d, get_number(eq["xi"], "probe.equal_squeezing.xi"), u);
        }
        const json &list = j["modes"];
        if (!list.is_array()) throw ConfigError("probe.modes: expected an array");
        std::vector<ModeParams> modes;
        for (const json &m : list) {
            require_object(m, "probe.modes[]", {"beta", "xi", "theta"});
            ModeParams p;
            if (m.contains("beta")) p.beta = get_complex(m["beta"], "probe.modes[].beta");
            if (m.contains("xi")) p.xi_mag = get_number(m["xi"], "probe.modes[].xi");
            if (m.contains("theta")) p.theta = get_number(m["theta"], "probe.modes[].theta");
            modes.push_back(p);
        }
        const auto n = static_cast<Index>(modes.size());
        const PassiveUnitary u =
            j.contains("interferometer") ? parse_interferometer(j["interferometer"], n, seed) : PassiveUnitary::identity(n);
        return ProbeSpec(std::move(modes), u);
    } catch (const ConfigError &) {
        throw;
    } catch (const Error &e) {
        throw ConfigError(std::string("probe: ") + e.what());
    }
}

void check_range(const ScanRange &r, std::string_view where) {
    if (!std::isfinite(r.start) || !std::isfinite(r.stop) || !std::isfinite(r.step) || r.step <= 0.0 ||
        r.stop < r.start) {
        throw ConfigError(std::string(where) + ": need finite start <= stop and step > 0");
    }
    if ((r.stop - r.start) / r.step > static_cast<double>(kMaxScanPoints)) {
        throw ConfigError(std::string(where) + ": too many points");
    }
}

// ---------------------------------------------------------------- shared helpers

std::string csv_row(std::initializer_list<std::string> fields) {
    std::string out;
    bool first = true;
    for (const auto &f : fields) {
        if (!first) out += ',';
        out += f;
        first = false;
    }
    out += '\n';
    return out;
}

Check make_check(std::string name, double residual, double tolerance) {
    const bool pass = std::isfinite(residual) && residual <= tolerance;
    return {std::move(name), residual, tolerance, pass};
}

// |closed - oracle| / max(|oracle|, floor / rel); passes at <= rel.
double oracle_residual(const CovMatrixH &closed, const CovMatrixH &oracle, double *max_abs = nullptr) {
    double worst = 0.0;
    double worst_abs = 0.0;
    for (Index i = 0; i < closed.dim(); ++i) {
        for (Index j = 0; j < closed.dim(); ++j) {
            const double diff = std::abs(closed(i, j) - oracle(i, j));
            worst_abs = std::max(worst_abs, diff);
            worst = std::max(worst, diff / std::max(std::abs(oracle(i, j)), kOracleAbsFloor / kOracleRelTol));
        }
    }
    if (max_abs) *max_abs = worst_abs;
    return worst;
}

std::optional<Index> oracle_cutoff(const ScenarioConfig &c) { return c.cutoff; }

// ---------------------------------------------------------------- pipelines

void run_qfim(const ScenarioConfig &c, std::ostream &csv, ScenarioReport &report) {
    const ProbeSpec &probe = *c.probe;
    const QMatrices q = build_q_matrices(probe);
    const CovMatrixH h = photon_covariances(q);
    const Qfim qfim = qfim_from_covariances(h);
    const CovMatrixH oracle = contracted_moments(probe, oracle_cutoff(c));

    csv << csv_row({"quantity", "i", "j", "value"});
    for (Index i = 0; i < h.dim(); ++i)
        for (Index j = 0; j < h.dim(); ++j)
            csv << csv_row({"h", std::to_string(i), std::to_string(j), format_double(h(i, j))});
    for (Index i = 0; i < qfim.dim(); ++i)
        for (Index j = 0; j < qfim.dim(); ++j)
            csv << csv_row({"H", std::to_string(i + 1), std::to_string(j + 1), format_double(qfim.dense()(i, j))});

    report.checks.push_back(
        make_check("oracle_equivalence", oracle_residual(h, oracle), c.tolerance.value_or(kOracleRelTol)));

    const RVector eig = hermitian_eigenvalues(ComplexMatrix::from_real(qfim.dense().values()));
    const double scale = std::max(1.0, eig.cwiseAbs().maxCoeff());
    report.checks.push_back(make_check("qfim_psd", std::max(0.0, -eig.minCoeff()) / scale, 1e-9));

    try {
        const double tr = trace_inverse(qfim);
        csv << csv_row({"trace_inverse", "", "", format_double(tr)});
        if (qfim.structured()) {
            const double dense = trace_inverse_dense(qfim);
            report.checks.push_back(
                make_check("trace_paths", std::abs(tr - dense) / std::max(1.0, std::abs(dense)), kFormTol));
        }
    } catch (const SingularMatrix &) {
        csv << csv_row({"trace_inverse", "", "", format_double(std::numeric_limits<double>::infinity())});
    }
}

std::vector<double> scan_xi_values(const ScenarioConfig &c) {
    if (c.db_range) {
        std::vector<double> xs;
        for (double db : c.db_range->values()) xs.push_back(db_to_xi(db));
        return xs;
    }
    return c.xi_range->values();
}

void run_ratio_scan(const ScenarioConfig &c, std::ostream &csv, ScenarioReport &report) {
    const std::vector<double> xs = scan_xi_values(c);
    const Index nd = c.d_range.last - c.d_range.first + 1;
    const auto nx = static_cast<Index>(xs.size());
    Eigen::MatrixXd r(nd, nx);

    double fp_residual = 0.0;
    double bound_violation = 0.0;
    double d1_residual = 0.0;
    csv << csv_row({"d", "xi", "R"});
    for (Index a = 0; a < nd; ++a) {
        const Index d = c.d_range.first + a;
        const double lower = (1.0 + 1.0 / static_cast<double>(d)) / 2.0;
        for (Index b = 0; b < nx; ++b) {
            const double xi = xs[static_cast<std::size_t>(b)];
            const double value = ratio_r_closed_form(d, xi);
            r(a, b) = value;
            csv << csv_row({std::to_string(d), format_double(xi), format_double(value)});
            if (xi > 0.0) fp_residual = std::max(fp_residual, std::abs(ratio_r_first_principles(d, xi) - value));
            bound_violation = std::max({bound_violation, lower - value, value - 1.0});
            if (d == 1) d1_residual = std::max(d1_residual, std::abs(value - 1.0));
        }
    }
    double rise_xi = 0.0;
    double rise_d = 0.0;
    for (Index a = 0; a < nd; ++a)
        for (Index b = 0; b + 1 < nx; ++b) rise_xi = std::max(rise_xi, r(a, b + 1) - r(a, b));
    for (Index a = 0; a + 1 < nd; ++a)
        for (Index b = 0; b < nx; ++b) rise_d = std::max(rise_d, r(a + 1, b) - r(a, b));

    report.checks.push_back(make_check("first_principles", fp_residual, c.tolerance.value_or(kRatioTol)));
    report.checks.push_back(make_check("bounds", std::max(0.0, bound_violation), kBoundSlack));
    report.checks.push_back(make_check("monotone_in_xi", std::max(0.0, rise_xi), 0.0));
    report.checks.push_back(make_check("monotone_in_d", std::max(0.0, rise_d), 0.0));
    if (c.d_range.first == 1) report.checks.push_back(make_check("unit_at_d1", d1_residual, kBoundSlack));
}

void run_rlim_scan(const ScenarioConfig &c, std::ostream &csv, ScenarioReport &report) {
    std::vector<double> dbs;
    std::vector<double> xs;
    if (c.db_range) {
        dbs = c.db_range->values();
        for (double db : dbs) xs.push_back(db_to_xi(db));
    } else {
        xs = c.xi_range->values();
        for (double x : xs) dbs.push_back(xi_to_db(x));
    }
    csv << csv_row({"db", "xi", "r_lim"});
    double prev = std::numeric_limits<double>::infinity();
    double rise = 0.0;
    double bound_violation = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double r = ratio_r_limit(xs[k]);
        csv << csv_row({format_double(dbs[k]), format_double(xs[k]), format_double(r)});
        if (k > 0) rise = std::max(rise, r - prev);
        bound_violation = std::max({bound_violation, 0.5 - r, r - 1.0});
        prev = r;
    }
    report.checks.push_back(make_check("monotone", std::max(0.0, rise), 0.0));
    report.checks.push_back(make_check("bounds", std::max(0.0, bound_violation), 0.0));
}

void run_optimize(const ScenarioConfig &c, std::ostream &csv, ScenarioReport &report) {
    const EnergyBudget &budget = *c.budget;
    const AllocationResult res = optimize_allocation(budget);

    csv << csv_row({"j", "energy", "displacement_fraction", "displacement_angle", "h_jj", "grid_best_h",
                    "grid_best_e_gamma", "grid_best_theta"});
    double grid_excess = 0.0;
    for (Index j = 0; j < res.per_mode_energy.size(); ++j) {
        const GridEvidence &g = res.grid[static_cast<std::size_t>(j)];
        csv << csv_row({std::to_string(j), format_double(res.per_mode_energy(j)),
                        format_double(res.displacement_fraction(j)), format_double(res.displacement_angle(j)),
                        format_double(res.h_diag(j)), format_double(g.best_h), format_double(g.best_e_gamma),
                        format_double(g.best_theta)});
        grid_excess = std::max(grid_excess, g.best_h - g.endpoint_h);
    }
    csv << csv_row({"objective", "", "", "", format_double(res.objective), "", "", ""});

    report.checks.push_back(make_check("grid_endpoint_optimal", std::max(0.0, grid_excess), 0.0));
    report.checks.push_back(make_check(
        "energy_sum", std::abs(res.per_mode_energy.sum() - budget.e_total) / std::max(1.0, budget.e_total), kFormTol));

    const double e = res.per_mode_energy(0);
    const double top = 8.0 * e * (e + 1.0);
    const double endpoint = std::max(std::abs(h_of_allocation(e, 0.0, 0.0) - top) / std::max(1.0, top),
                                     std::abs(h_of_allocation(e, e, 0.0) - 4.0 * e) / std::max(1.0, 4.0 * e));
    report.checks.push_back(make_check("endpoint_values", endpoint, kEndpointTol));

    double objective_residual = 0.0;
    if (budget.e_total > 0.0) {
        const double sim = trace_inverse(h_sim(budget));
        objective_residual = std::abs(res.objective - sim) / std::max(1.0, std::abs(sim));
    } else if (!std::isinf(res.objective)) {
        objective_residual = std::numeric_limits<double>::infinity();
    }
    report.checks.push_back(make_check("objective_vs_h_sim", objective_residual, c.tolerance.value_or(kFormTol)));
}

void run_verify(const ScenarioConfig &c, std::ostream &csv, ScenarioReport &report) {
    Rng rng(*c.seed);
    const ProbeSampling sampling;
    csv << csv_row({"probe", "modes", "interferometer", "energy", "max_abs_diff", "max_residual"});
    double worst = 0.0;
    for (Index k = 0; k < c.probe_count; ++k) {
        const ProbeSpec probe = random_probe(sampling, rng);
        const CovMatrixH closed = photon_covariances(build_q_matrices(probe));
        const CovMatrixH oracle = contracted_moments(probe, oracle_cutoff(c));
        double abs_diff = 0.0;
        const double res = oracle_residual(closed, oracle, &abs_diff);
        worst = std::max(worst, res);
        csv << csv_row({std::to_string(k), std::to_string(probe.mode_count()),
                        probe.interferometer().is_orthogonal() ? "orthogonal" : "unitary",
                        format_double(total_energy(probe)), format_double(abs_diff), format_double(res)});
    }
    report.checks.push_back(make_check("oracle_equivalence", worst, c.tolerance.value_or(kOracleRelTol)));
}

}  // namespace

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string_view mode_name(ScenarioMode mode) {
    switch (mode) {
        case ScenarioMode::qfim: return "qfim";
        case ScenarioMode::ratio_scan: return "ratio-scan";
        case ScenarioMode::rlim_scan: return "rlim-scan";
        case ScenarioMode::optimize: return "optimize";
        case ScenarioMode::verify: return "verify";
    }
    return "unknown";
}

ScenarioMode parse_mode(std::string_view name) {
    for (ScenarioMode m : {ScenarioMode::qfim, ScenarioMode::ratio_scan, ScenarioMode::rlim_scan,
                           ScenarioMode::optimize, ScenarioMode::verify}) {
        if (mode_name(m) == name) return m;
    }
    throw ConfigError("unknown mode '" + std::string(name) + "'");
}

std::vector<double> ScanRange::values() const {
    const auto count = static_cast<Index>(std::floor((stop - start) / step + 0.5)) + 1;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (Index k = 0; k < count; ++k) out.push_back(start + static_cast<double>(k) * step);
    return out;
}

void ScenarioConfig::validate() const {
    if (tolerance && (!std::isfinite(*tolerance) || *tolerance <= 0.0)) {
        throw ConfigError("tolerance must be positive and finite");
    }
    if (cutoff && *cutoff < 1) throw ConfigError("cutoff must be at least 1");
    switch (mode) {
        case ScenarioMode::qfim:
            if (!probe) throw ConfigError("qfim needs a probe");
            break;
        case ScenarioMode::optimize:
            if (!budget) throw ConfigError("optimize needs a budget");
            try {
                budget->validate();
            } catch (const Error &e) {
                throw ConfigError(e.what());
            }
            break;
        case ScenarioMode::ratio_scan:
        case ScenarioMode::rlim_scan: {
            if (xi_range.has_value() == db_range.has_value()) {
                throw ConfigError("give exactly one of xi_range and db_range");
            }
            if (mode == ScenarioMode::ratio_scan && (d_range.first < 1 || d_range.last < d_range.first)) {
                throw ConfigError("d_range: need 1 <= first <= last");
            }
            const ScanRange &r = xi_range ? *xi_range : *db_range;
            check_range(r, xi_range ? "xi_range" : "db_range");
            const double max_xi = xi_range ? r.values().back() : db_to_xi(r.values().back());
            if (r.start < 0.0 || max_xi > kMaxSqueezing) throw ConfigError("scan: xi must lie in [0, 20]");
            break;
        }
        case ScenarioMode::verify:
            if (!seed) throw ConfigError("verify needs a seed");
            if (probe_count < 1) throw ConfigError("probes must be at least 1");
            break;
    }
}

ScenarioConfig parse_config(std::string_view json_text, const ConfigOverrides &overrides) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    require_object(j, "config", {"mode", "output", "seed", "tolerance", "cutoff", "probe", "budget", "d_range",
                                 "xi_range", "db_range", "probes"});
    ScenarioConfig c;
    if (j.contains("mode")) {
        if (!j["mode"].is_string()) throw ConfigError("mode: expected a string");
        c.mode = parse_mode(j["mode"].get<std::string>());
        if (overrides.mode && *overrides.mode != c.mode) {
            throw ConfigError("config mode '" + std::string(mode_name(c.mode)) + "' conflicts with subcommand '" +
                              std::string(mode_name(*overrides.mode)) + "'");
        }
    } else if (overrides.mode) {
        c.mode = *overrides.mode;
    } else {
        throw ConfigError("no mode given");
    }

    if (j.contains("seed")) c.seed = get_unsigned(j["seed"], "seed");
    if (overrides.seed) c.seed = overrides.seed;
    if (j.contains("output")) {
        if (!j["output"].is_string()) throw ConfigError("output: expected a string");
        c.output = j["output"].get<std::string>();
    }
    if (overrides.output) c.output = overrides.output;
    if (j.contains("tolerance")) c.tolerance = get_number(j["tolerance"], "tolerance");
    if (overrides.tolerance) c.tolerance = overrides.tolerance;
    if (j.contains("cutoff")) c.cutoff = get_index(j["cutoff"], "cutoff");
    if (overrides.cutoff) c.cutoff = overrides.cutoff;
    if (j.contains("probes")) c.probe_count = get_index(j["probes"], "probes");

    if (j.contains("probe")) c.probe = parse_probe(j["probe"], c.seed);
    if (j.contains("budget")) {
        const json &b = j["budget"];
        require_object(b, "budget", {"e_total", "d"});
        if (!b.contains("e_total") || !b.contains("d")) throw ConfigError("budget: needs e_total and d");
        c.budget = EnergyBudget{get_number(b["e_total"], "budget.e_total"), get_index(b["d"], "budget.d")};
    }
    if (j.contains("d_range")) {
        const json &r = j["d_range"];
        require_object(r, "d_range", {"first", "last"});
        if (!r.contains("first") || !r.contains("last")) throw ConfigError("d_range: needs first and last");
        c.d_range = {get_index(r["first"], "d_range.first"), get_index(r["last"], "d_range.last")};
    }
    if (j.contains("xi_range")) c.xi_range = parse_range(j["xi_range"], "xi_range");
    if (j.contains("db_range")) c.db_range = parse_range(j["db_range"], "db_range");
    if (!c.xi_range && !c.db_range) {
        if (c.mode == ScenarioMode::ratio_scan) c.xi_range = ScanRange{0.0, 2.5, 0.05};
        if (c.mode == ScenarioMode::rlim_scan) c.db_range = ScanRange{0.0, 16.0, 0.5};
    }
    c.validate();
    return c;
}

ScenarioConfig load_config(const std::string &path, const ConfigOverrides &overrides) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    if (in.bad()) throw IoError("error while reading config '" + path + "'");
    return parse_config(text.str(), overrides);
}

bool ScenarioReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check &c) { return c.pass; });
}

std::string ScenarioReport::to_json() const {
    nlohmann::ordered_json checks_json = nlohmann::ordered_json::array();
    for (const Check &c : checks) {
        checks_json.push_back(nlohmann::ordered_json{{"name", c.name}, {"residual", c.residual}, {"tolerance", c.tolerance}, {"pass", c.pass}});
    }
    const nlohmann::ordered_json out = {{"scenario", scenario}, {"checks", checks_json}, {"elapsed", elapsed}};
    return out.dump(2);
}

ScenarioReport run_scenario(const ScenarioConfig &config, std::ostream &csv) {
    config.validate();
    const auto t0 = std::chrono::steady_clock::now();
    ScenarioReport report;
    report.scenario = std::string(mode_name(config.mode));
    switch (config.mode) {
        case ScenarioMode::qfim: run_qfim(config, csv, report); break;
        case ScenarioMode::ratio_scan: run_ratio_scan(config, csv, report); break;
        case ScenarioMode::rlim_scan: run_rlim_scan(config, csv, report); break;
        case ScenarioMode::optimize: run_optimize(config, csv, report); break;
        case ScenarioMode::verify: run_verify(config, csv, report); break;
    }
    report.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

ScenarioReport run_scenario(const ScenarioConfig &config) {
    if (!config.output) throw ConfigError("no output path");
    std::ostringstream buffer;
    ScenarioReport report = run_scenario(config, buffer);
    std::ofstream out(*config.output, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + *config.output + "' for writing");
    out << buffer.str();
    out.flush();
    if (!out) throw IoError("error while writing '" + *config.output + "'");
    return report;
}

}  // namespace qfimkit
