# Copyright 2026 The qfimkit Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Quantum Fisher information for multiphase estimation with Gaussian probes."""

import json as _json

from ._core import (
    ConfigError,
    DomainError,
    ModeParams,
    PassiveUnitary,
    ProbeSpec,
    QfimkitError,
    SingularMatrixError,
    attainability,
    db_to_xi,
    h_of_allocation,
    h_sim,
    optimize_allocation,
    oracle_covariances,
    photon_covariances,
    q_function,
    qfim,
    ratio_r,
    ratio_r_first_principles,
    ratio_r_limit,
    trace_inverse,
    xi_to_db,
)
from ._core import run_scenario as _run_scenario

__version__ = "0.1.0"


def run_scenario(config):
    """Run a scenario given as a dict or JSON string; returns (csv_text, summary_dict)."""
    text = config if isinstance(config, str) else _json.dumps(config)
    csv_text, summary = _run_scenario(text)
    return csv_text, _json.loads(summary)


__all__ = [
    "ConfigError",
    "DomainError",
    "ModeParams",
    "PassiveUnitary",
    "ProbeSpec",
    "QfimkitError",
    "SingularMatrixError",
    "attainability",
    "db_to_xi",
    "h_of_allocation",
    "h_sim",
    "optimize_allocation",
    "oracle_covariances",
    "photon_covariances",
    "q_function",
    "qfim",
    "ratio_r",
    "ratio_r_first_principles",
    "ratio_r_limit",
    "run_scenario",
    "trace_inverse",
    "xi_to_db",
]
