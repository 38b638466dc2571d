// Copyright 2026 The memtele Authors
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

#pragma once

// Teleportation of a polarization qubit over a dephased Bell pair.
//
// Photon 1 carries the input alpha|H> + beta|V>; photons 2 (Alice) and 3 (Bob)
// start in phi+ with a correlated frequency environment. Photon 2 crosses a
// birefringent plate, Alice measures photons 1 and 2 in the Bell basis and
// sends the outcome, Bob applies the matching correction. In the
// memory-assisted variant Bob then sends photon 3 through his own plate with
// birefringence +-dn2 chosen by the outcome, which undoes the dephasing to the
// extent that the two frequencies are anticorrelated.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "memtele/engine.h"
#include "memtele/qlinalg.h"
#include "memtele/spectrum.h"

namespace memtele {

enum class Strategy { Standard, MemoryAssisted };

const char *to_string(Strategy strategy);

struct PhaseGateSetting {
    enum class Mode { Auto, Explicit, Off };

    Mode mode = Mode::Auto;
    double radians = 0.0;

    static PhaseGateSetting automatic() { return {Mode::Auto, 0.0}; }
    static PhaseGateSetting fixed(double radians) { return {Mode::Explicit, radians}; }
    static PhaseGateSetting off() { return {Mode::Off, 0.0}; }

    bool operator==(const PhaseGateSetting &) const = default;
};

struct ProtocolConfig {
    Complex alpha = 1.0 / std::sqrt(2.0);
    Complex beta = 1.0 / std::sqrt(2.0);
    JointSpectrum spectrum{};
    double dn2 = 1.0;
    double t2 = 0.0;
    /// Bob's plate duration; unset means t3 = t2.
    std::optional<double> t3;
    Strategy strategy = Strategy::MemoryAssisted;
    PhaseGateSetting phase = PhaseGateSetting::automatic();

    void validate() const;
    double effective_t3() const { return t3.value_or(t2); }
    StateVector input() const;
    DephasingEvent alice_event() const { return {2, dn2, t2}; }

    bool operator==(const ProtocolConfig &) const = default;
};

/// Bob's feed-forward for one Bell outcome.
struct CorrectionRule {
    BellOutcome outcome;
    Unitary unitary;
    /// Bob's birefringence is dn3_sign * dn2.
    int dn3_sign;
};

const CorrectionRule &correction_rule(BellOutcome outcome);

enum class Party { Source, Alice, Bob, Channel };

const char *to_string(Party party);

/// One step of the protocol as executed, for auditing who touched what.
struct PipelineStep {
    Party party;
    std::string operation;
    std::vector<int> photons;
    std::optional<BellOutcome> outcome;
};

struct OutcomeResult {
    BellOutcome outcome;
    double probability;
    DensityMatrix output;
    double fidelity;
    /// Phase-gate angle actually applied (0 when the gate is off).
    double phase_gate;
    std::vector<PipelineStep> trace;
};

struct TeleportationReport {
    ProtocolConfig config;
    std::vector<OutcomeResult> outcomes;
    double average_fidelity;
    double worst_fidelity;
    Complex kappa2;
    /// Decoherence function of the combined plates, char_fn(dn2 t2, dn2 t3).
    Complex kappa_joint;

    const OutcomeResult &at(BellOutcome outcome) const;
};

/// Evaluates all four outcomes exactly.
TeleportationReport run(const ProtocolConfig &config);

/// Single outcome, with its state and fidelity, for one Bell outcome.
OutcomeResult run_outcome(const ProtocolConfig &config, BellOutcome outcome);

struct SampledRun {
    BellOutcome outcome;
    OutcomeResult entry;
};

/// Draws one outcome from the exact outcome distribution (inverse CDF in the
/// order phi+, phi-, psi+, psi-).
SampledRun run_sampled(const ProtocolConfig &config, std::uint64_t seed);

/// Phase-gate angle that cancels the deterministic mean-frequency phase left
/// on Bob's coherence for `outcome`.
double auto_phase(const ProtocolConfig &config, BellOutcome outcome = BellOutcome::PhiPlus);

/// Phase-gate angle applied for `outcome` under the config's setting.
double applied_phase(const ProtocolConfig &config, BellOutcome outcome);

/// Worst outcome fidelity for the input alpha = beta = 1/sqrt(2).
double worst_case_fidelity(const ProtocolConfig &config);

/// Worst outcome fidelity minimized over 100 inputs: 25 populations |alpha|^2
/// on [0, 1] times 4 relative phases.
double worst_case_fidelity_grid(const ProtocolConfig &config);

}  // namespace memtele
