# Copyright 2026 The memtele Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Teleportation over dephasing photon pairs with correlated frequency environments."""

from memtele._memtele import (
    BellOutcome,
    JointSpectrum,
    NoCrossoverError,
    OracleReport,
    OutcomeResult,
    ProtocolConfig,
    Strategy,
    TeleportationReport,
    ZeroProbabilityError,
    auto_phase,
    char_fn,
    compare,
    crossover,
    duration_for_kappa,
    f_memory,
    f_optimal,
    f_standard,
    figure2_sweep,
    kappa2,
    oracle_run,
    run,
    worst_case_fidelity,
)

__all__ = [
    "BellOutcome",
    "JointSpectrum",
    "NoCrossoverError",
    "OracleReport",
    "OutcomeResult",
    "ProtocolConfig",
    "Strategy",
    "TeleportationReport",
    "ZeroProbabilityError",
    "auto_phase",
    "char_fn",
    "compare",
    "crossover",
    "duration_for_kappa",
    "f_memory",
    "f_optimal",
    "f_standard",
    "figure2_sweep",
    "kappa2",
    "oracle_run",
    "run",
    "worst_case_fidelity",
]
