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

#include "memtele/protocol.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "memtele/errors.h"

namespace memtele {

const char *to_string(Strategy strategy) {
    return strategy == Strategy::Standard ? "standard" : "memory";
}

const char *to_string(Party party) {
    switch (party) {
        case Party::Source:
            return "source";
        case Party::Alice:
            return "alice";
        case Party::Bob:
            return "bob";
        case Party::Channel:
            return "channel";
    }
    return "?";
}

void ProtocolConfig::validate() const {
    double norm = std::norm(alpha) + std::norm(beta);
    require(std::abs(norm - 1.0) <= kIdentityTol, "config: |alpha|^2 + |beta|^2 must equal 1");
    require(std::isfinite(dn2), "config: dn2 must be finite");
    require(std::isfinite(t2) && t2 >= 0, "config: t2 must be non-negative");
    if (t3) {
        require(std::isfinite(*t3) && *t3 >= 0, "config: t3 must be non-negative");
    }
    require(std::isfinite(phase.radians), "config: phase-gate angle must be finite");
}

StateVector ProtocolConfig::input() const {
    return StateVector{alpha, beta};
}

const CorrectionRule &correction_rule(BellOutcome outcome) {
    static const std::array<CorrectionRule, 4> rules = {
        CorrectionRule{BellOutcome::PhiPlus, Unitary::identity(), +1},
        CorrectionRule{BellOutcome::PhiMinus, Unitary::pauli_z(), +1},
        CorrectionRule{BellOutcome::PsiPlus, Unitary::pauli_x(), -1},
        CorrectionRule{BellOutcome::PsiMinus, Unitary::i_pauli_y(), -1},
    };
    return rules[static_cast<std::size_t>(outcome)];
}

const OutcomeResult &TeleportationReport::at(BellOutcome outcome) const {
    for (const auto &o : outcomes) {
        if (o.outcome == outcome) {
            return o;
        }
    }
    throw ContractViolation("report has no entry for this outcome");
}

namespace {

struct BobState {
    double probability;
    PhaseTaggedState state;
    std::vector<PipelineStep> trace;
};

// Everything up to, but not including, Bob's phase gate.
BobState run_until_gate(const ProtocolConfig &config, BellOutcome outcome) {
    std::vector<PipelineStep> trace;
    trace.push_back({Party::Source, "prepare_bell_pair", {2, 3}, std::nullopt});
    trace.push_back({Party::Alice, "prepare_input", {1}, std::nullopt});
    auto state = PhaseTaggedState::lift(tensor(config.input(), bell_state(BellOutcome::PhiPlus)), config.spectrum,
                                        {1, 2, 3});

    state = dephase(state, config.alice_event(), state.qubit_of(2));
    trace.push_back({Party::Alice, "dephase", {2}, std::nullopt});

    auto projection = project_bell(state, outcome);
    trace.push_back({Party::Alice, "bell_measurement", {1, 2}, outcome});
    trace.push_back({Party::Channel, "send_outcome", {}, outcome});

    const auto &rule = correction_rule(outcome);
    auto bob = apply_local_unitary(projection.remnant, rule.unitary, 0);
    trace.push_back({Party::Bob, "correction", {3}, outcome});

    if (config.strategy == Strategy::MemoryAssisted) {
        DephasingEvent event{3, rule.dn3_sign * config.dn2, config.effective_t3()};
        bob = dephase(bob, event, 0);
        trace.push_back({Party::Bob, "dephase", {3}, outcome});
    }
    return {projection.probability, std::move(bob), std::move(trace)};
}

}  // namespace

double auto_phase(const ProtocolConfig &config, BellOutcome outcome) {
    config.validate();
    ProtocolConfig probe = config;
    probe.alpha = probe.beta = 1.0 / std::sqrt(2.0);
    auto bob = run_until_gate(probe, outcome).state;
    const auto &branches = bob.branches();
    require(branches.size() == 2 && branches[0].basis == 0 && branches[1].basis == 1,
            "auto_phase: expected one H and one V branch");
    // Coherence rho(H, V) picks up arg char_fn(tag_V - tag_H) = -mean * (dl2 + dl3);
    // diag(1, e^{i theta}) multiplies it by e^{-i theta}.
    double dl2 = branches[1].tag.lam2 - branches[0].tag.lam2;
    double dl3 = branches[1].tag.lam3 - branches[0].tag.lam3;
    return -config.spectrum.mean() * (dl2 + dl3);
}

double applied_phase(const ProtocolConfig &config, BellOutcome outcome) {
    switch (config.phase.mode) {
        case PhaseGateSetting::Mode::Auto:
            return auto_phase(config, outcome);
        case PhaseGateSetting::Mode::Explicit:
            return config.phase.radians;
        case PhaseGateSetting::Mode::Off:
            return 0.0;
    }
    return 0.0;
}

OutcomeResult run_outcome(const ProtocolConfig &config, BellOutcome outcome) {
    config.validate();
    auto [probability, bob, trace] = run_until_gate(config, outcome);
    double theta = applied_phase(config, outcome);
    if (config.phase.mode != PhaseGateSetting::Mode::Off) {
        bob = apply_local_unitary(bob, Unitary::phase_gate(theta), 0);
        trace.push_back({Party::Bob, "phase_gate", {3}, outcome});
    }
    DensityMatrix rho = reduce(bob);
    double fidelity = fidelity_pure(config.input(), rho);
    return {outcome, probability, std::move(rho), fidelity, theta, std::move(trace)};
}

TeleportationReport run(const ProtocolConfig &config) {
    config.validate();
    std::vector<OutcomeResult> outcomes;
    outcomes.reserve(4);
    double average = 0.0;
    double worst = 1.0;
    for (auto outcome : kBellOutcomes) {
        outcomes.push_back(run_outcome(config, outcome));
        average += outcomes.back().probability * outcomes.back().fidelity;
        worst = std::min(worst, outcomes.back().fidelity);
    }
    Complex k2 = kappa2(config.spectrum, config.alice_event());
    Complex kj = char_fn(config.spectrum, config.dn2 * config.t2, config.dn2 * config.effective_t3());
    return {config, std::move(outcomes), average, worst, k2, kj};
}

SampledRun run_sampled(const ProtocolConfig &config, std::uint64_t seed) {
    auto report = run(config);
    std::mt19937_64 rng(seed);
    double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    double cumulative = 0.0;
    for (const auto &entry : report.outcomes) {
        cumulative += entry.probability;
        if (u < cumulative) {
            return {entry.outcome, entry};
        }
    }
    // u landed in the rounding gap above the last cumulative sum.
    return {report.outcomes.back().outcome, report.outcomes.back()};
}

double worst_case_fidelity(const ProtocolConfig &config) {
    ProtocolConfig worst = config;
    worst.alpha = worst.beta = 1.0 / std::sqrt(2.0);
    return run(worst).worst_fidelity;
}

double worst_case_fidelity_grid(const ProtocolConfig &config) {
    constexpr int kPopulations = 25;
    constexpr int kPhases = 4;
    double lowest = 1.0;
    for (int i = 0; i < kPopulations; ++i) {
        double p = static_cast<double>(i) / (kPopulations - 1);
        for (int j = 0; j < kPhases; ++j) {
            double phi = 2.0 * std::numbers::pi * j / kPhases;
            ProtocolConfig probe = config;
            probe.alpha = std::sqrt(p);
            probe.beta = std::polar(std::sqrt(1.0 - p), phi);
            lowest = std::min(lowest, run(probe).worst_fidelity);
        }
    }
    return lowest;
}

}  // namespace memtele
