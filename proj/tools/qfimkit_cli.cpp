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

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qfimkit/errors.hpp"
#include "qfimkit/scenario.hpp"

namespace {

enum ExitCode : int { kOk = 0, kNumericFailure = 1, kConfigError = 2, kIoError = 3 };

}  // namespace

int main(int argc, char **argv) {
    using namespace qfimkit;

    CLI::App app{"Quantum Fisher information for multiphase estimation with Gaussian probes"};
    app.require_subcommand(1);

    std::optional<std::string> config_path;
    std::optional<std::string> out_path;
    std::optional<std::uint64_t> seed;
    std::optional<Index> cutoff;
    std::optional<double> tol;

    app.option_defaults()->always_capture_default(false);
    auto add_flags = [&](CLI::App *cmd) {
        cmd->add_option("--config", config_path, "Scenario config (JSON)");
        cmd->add_option("--out", out_path, "CSV output path; CSV goes to stdout when absent");
        cmd->add_option("--seed", seed, "Seed for randomized pipelines");
        cmd->add_option("--cutoff", cutoff, "Per-mode Fock cutoff for the oracle")->check(CLI::PositiveNumber);
        cmd->add_option("--tol", tol, "Tolerance for the primary agreement check")->check(CLI::PositiveNumber);
    };
    add_flags(&app);

    const std::pair<const char *, const char *> commands[] = {
        {"qfim", "QFIM and photon-number covariances of one probe"},
        {"ratio-scan", "Simultaneous/individual ratio over (d, xi)"},
        {"rlim-scan", "Large-d ratio over squeezing in dB"},
        {"optimize", "Energy allocation and optimal simultaneous QFIM"},
        {"verify", "Closed form against the Fock-space oracle on random probes"},
    };
    for (const auto &[name, help] : commands) {
        CLI::App *cmd = app.add_subcommand(name, help);
        add_flags(cmd);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    ConfigOverrides overrides;
    overrides.mode = parse_mode(app.get_subcommands().front()->get_name());
    overrides.output = out_path;
    overrides.seed = seed;
    overrides.cutoff = cutoff;
    overrides.tolerance = tol;

    try {
        const ScenarioConfig config = config_path ? load_config(*config_path, overrides) : parse_config("{}", overrides);
        ScenarioReport report;
        if (config.output) {
            report = run_scenario(config);
            std::cout << report.to_json() << '\n';
        } else {
            report = run_scenario(config, std::cout);
            std::cout.flush();
            std::cerr << report.to_json() << '\n';
        }
        return report.all_pass() ? kOk : kNumericFailure;
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const IoError &e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kIoError;
    } catch (const std::exception &e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumericFailure;
    }
}
