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

// Exact polarization + frequency evolution with phase tags.
//
// A branch (basis, amp, tag) stands for the system-environment component
//
//     amp * |basis> (x) integral dw2 dw3 g(w2, w3) exp(+i (tag.lam2 w2 + tag.lam3 w3)) |w2 w3>.
//
// Dephasing on photon i only adds delta_n * t to tag.lam_i of branches where
// that photon is V, so a state is a short list of branches. Tracing out the
// frequencies contracts every pair of branches through the characteristic
// function of the joint spectrum:
//
//     rho(i, j) = sum_{b: basis i, b': basis j} amp_b conj(amp_b') char_fn(tag_b' - tag_b).

#include <cstdint>
#include <vector>

#include "memtele/qlinalg.h"
#include "memtele/spectrum.h"

namespace memtele {

struct PhaseTag {
    double lam2 = 0.0;
    double lam3 = 0.0;

    bool operator==(const PhaseTag &) const = default;
};

/// Tags closer than this (componentwise) are treated as identical.
inline constexpr double kTagMergeTol = 1e-14;

struct Branch {
    std::uint32_t basis = 0;
    Complex amp = 0.0;
    PhaseTag tag;
};

struct BellProjection;

class PhaseTaggedState {
  public:
    /// Attaches `spectrum` to |psi>; `photons[q]` names the photon held by qubit q.
    static PhaseTaggedState lift(const StateVector &psi, const JointSpectrum &spectrum, std::vector<int> photons);

    int qubit_count() const { return static_cast<int>(photons_.size()); }
    const std::vector<int> &photons() const { return photons_; }
    const std::vector<Branch> &branches() const { return branches_; }
    const JointSpectrum &spectrum() const { return spectrum_; }

    /// Qubit holding `photon`, or -1.
    int qubit_of(int photon) const;

    /// System-environment norm squared, including environment overlaps.
    double physical_norm() const;

    /// Number of distinct tags carried by branches of the same basis index.
    std::size_t max_tags_per_basis() const;

  private:
    friend PhaseTaggedState dephase(const PhaseTaggedState &, const DephasingEvent &, int);
    friend PhaseTaggedState apply_local_unitary(const PhaseTaggedState &, const Unitary &, int);
    friend BellProjection project_bell(const PhaseTaggedState &, BellOutcome);

    PhaseTaggedState(JointSpectrum spectrum, std::vector<int> photons, std::vector<Branch> branches);
    void canonicalize();

    JointSpectrum spectrum_;
    std::vector<int> photons_;
    std::vector<Branch> branches_;
};

PhaseTaggedState dephase(const PhaseTaggedState &state, const DephasingEvent &event, int target);
PhaseTaggedState apply_local_unitary(const PhaseTaggedState &state, const Unitary &u, int target);

struct BellProjection {
    double probability;
    PhaseTaggedState remnant;
};

/// Projects qubits 0 and 1 of a three-qubit state onto a Bell state and
/// returns the renormalized state of qubit 2. Throws ZeroProbabilityError
/// when the outcome cannot occur.
BellProjection project_bell(const PhaseTaggedState &state, BellOutcome outcome);

DensityMatrix reduce(const PhaseTaggedState &state);

}  // namespace memtele
