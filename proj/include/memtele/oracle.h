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

// Monte Carlo cross-check of the phase-tag engine.
//
// The plate Hamiltonians are diagonal in frequency, so for a fixed sample
// (w2, w3) every dephasing step is a plain polarization phase. The oracle
// draws frequency pairs, runs the whole protocol on explicit three-photon
// pure states for each of them and averages Bob's projectors. It shares no
// code with the engine beyond the protocol's fixed choices (correction table,
// phase-gate angle).

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "memtele/protocol.h"

namespace memtele {

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
};

struct OracleOutcome {
    BellOutcome outcome;
    Estimate probability;
    /// Bob's conditional state, entrywise.
    std::array<std::array<Estimate, 2>, 2> rho_re;
    std::array<std::array<Estimate, 2>, 2> rho_im;
    Estimate fidelity;
    /// Unweighted sample variance of the per-sample fidelity.
    double fidelity_sample_variance = 0.0;

    CMatrix rho_mean() const;
};

struct OracleOptions {
    std::size_t n_samples = 100000;
    std::uint64_t seed = 42;
    /// Samples are split into this many independently seeded streams. The
    /// result depends on the partition count but not on the thread count.
    int partitions = 16;
    /// 0 means one thread per hardware core.
    int threads = 0;
};

struct OracleReport {
    ProtocolConfig config;
    std::size_t n_samples;
    std::uint64_t seed;
    int partitions;
    std::vector<OracleOutcome> outcomes;

    const OracleOutcome &at(BellOutcome outcome) const;
};

OracleReport oracle_run(const ProtocolConfig &config, const OracleOptions &options = {});

/// Absolute slack added to every sigma bound so that zero-variance estimates
/// are compared up to rounding.
inline constexpr double kCompareAbsFloor = 1e-12;

struct Deviation {
    std::string label;
    double delta;
    double std_error;
    bool ok;
};

struct ComparisonSummary {
    bool pass;
    double sigma_budget;
    std::vector<Deviation> entries;
    /// Entry with the largest |delta| relative to its allowance.
    Deviation worst;
};

/// Passes iff every |engine - oracle| <= sigma_budget * SE + kCompareAbsFloor.
ComparisonSummary compare(const TeleportationReport &engine, const OracleReport &oracle, double sigma_budget);

/// Sample mean of exp(-i (l2 w2 + l3 w3)) over sample_pairs(spec, n, seed).
Complex empirical_char_fn(const JointSpectrum &spec, double lambda2, double lambda3, std::size_t n,
                          std::uint64_t seed);

}  // namespace memtele
