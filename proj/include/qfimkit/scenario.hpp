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
 * Scenario configs and the batch pipelines behind the command-line tool.
 *
 * A config is a JSON object. Every key is optional except where a mode needs it:
 *
 *     mode          "qfim" | "ratio-scan" | "rlim-scan" | "optimize" | "verify"
 *     output        CSV path
 *     seed          unsigned integer; required for verify and for Haar interferometers
 *     tolerance     override for the primary agreement check of the mode
 *     cutoff        per-mode Fock cutoff for the oracle
 *     probe         {"modes": [{"beta": [re, im], "xi": r, "theta": t}, ...] | "equal_squeezing": {"d", "xi"},
 *                    "interferometer": {"kind": ..., ...}}
 *     budget        {"e_total": E, "d": d}
 *     d_range       {"first": 1, "last": 25}
 *     xi_range      {"start": 0, "stop": 2.5, "step": 0.05}
 *     db_range      same shape, in dB
 *     probes        number of random probes for verify
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qfimkit/gaussian_state.hpp"
#include "qfimkit/optimizer.hpp"

namespace qfimkit {

enum class ScenarioMode { qfim, ratio_scan, rlim_scan, optimize, verify };

std::string_view mode_name(ScenarioMode mode);
/// Throws ConfigError for unknown names.
ScenarioMode parse_mode(std::string_view name);

struct ScanRange {
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;

    /// start + k step for k = 0..round((stop - start) / step).
    std::vector<double> values() const;
};

struct IndexRange {
    Index first = 1;
    Index last = 25;
};

struct ScenarioConfig {
    ScenarioMode mode = ScenarioMode::qfim;
    std::optional<ProbeSpec> probe;
    std::optional<EnergyBudget> budget;
    IndexRange d_range;
    std::optional<ScanRange> xi_range;
    std::optional<ScanRange> db_range;
    std::optional<std::string> output;
    std::optional<double> tolerance;
    std::optional<Index> cutoff;
    std::optional<std::uint64_t> seed;
    Index probe_count = 200;

    /// Throws ConfigError.
    void validate() const;
};

/// Command-line values that take precedence over the config file.
struct ConfigOverrides {
    std::optional<ScenarioMode> mode;
    std::optional<std::string> output;
    std::optional<std::uint64_t> seed;
    std::optional<Index> cutoff;
    std::optional<double> tolerance;
};

/// Parses JSON text, applies overrides and validates. Throws ConfigError.
ScenarioConfig parse_config(std::string_view json_text, const ConfigOverrides &overrides = {});
/// Reads the file (IoError if unreadable) and defers to parse_config.
ScenarioConfig load_config(const std::string &path, const ConfigOverrides &overrides = {});

struct Check {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct ScenarioReport {
    std::string scenario;
    std::vector<Check> checks;
    double elapsed = 0.0;  ///< seconds

    bool all_pass() const;
    /// {"scenario", "checks": [{"name", "residual", "tolerance", "pass"}], "elapsed"}
    std::string to_json() const;
};

/// Runs the pipeline and writes CSV to `csv`.
ScenarioReport run_scenario(const ScenarioConfig &config, std::ostream &csv);
/// Writes CSV to config.output; throws IoError if it cannot be written.
ScenarioReport run_scenario(const ScenarioConfig &config);

/// printf("%.17g").
std::string format_double(double value);

}  // namespace qfimkit
