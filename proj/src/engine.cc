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

#include "memtele/engine.h"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "memtele/errors.h"

namespace memtele {

namespace {

bool same_tag(const PhaseTag &a, const PhaseTag &b) {
    return std::abs(a.lam2 - b.lam2) <= kTagMergeTol && std::abs(a.lam3 - b.lam3) <= kTagMergeTol;
}

std::uint32_t bit_of(int qubit, int qubit_count) {
    return std::uint32_t{1} << (qubit_count - 1 - qubit);
}

// Smallest probability treated as a possible measurement outcome.
constexpr double kMinProbability = 1e-15;

}  // namespace

PhaseTaggedState::PhaseTaggedState(JointSpectrum spectrum, std::vector<int> photons, std::vector<Branch> branches)
    : spectrum_(spectrum), photons_(std::move(photons)), branches_(std::move(branches)) {
    canonicalize();
}

PhaseTaggedState PhaseTaggedState::lift(const StateVector &psi, const JointSpectrum &spectrum,
                                        std::vector<int> photons) {
    require(static_cast<int>(photons.size()) == psi.qubit_count(), "lift: one photon label per qubit required");
    require(psi.qubit_count() >= 1 && psi.qubit_count() <= 3, "lift: supports one to three qubits");
    std::vector<int> sorted = photons;
    std::sort(sorted.begin(), sorted.end());
    require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), "lift: photon labels must be distinct");
    std::vector<Branch> branches;
    for (Eigen::Index i = 0; i < psi.dim(); ++i) {
        if (psi[i] != Complex(0.0)) {
            branches.push_back({static_cast<std::uint32_t>(i), psi[i], PhaseTag{}});
        }
    }
    return PhaseTaggedState(spectrum, std::move(photons), std::move(branches));
}

int PhaseTaggedState::qubit_of(int photon) const {
    auto it = std::find(photons_.begin(), photons_.end(), photon);
    return it == photons_.end() ? -1 : static_cast<int>(it - photons_.begin());
}

void PhaseTaggedState::canonicalize() {
    std::sort(branches_.begin(), branches_.end(), [](const Branch &a, const Branch &b) {
        return std::tie(a.basis, a.tag.lam2, a.tag.lam3) < std::tie(b.basis, b.tag.lam2, b.tag.lam3);
    });
    std::vector<Branch> merged;
    merged.reserve(branches_.size());
    for (const auto &b : branches_) {
        if (!merged.empty() && merged.back().basis == b.basis && same_tag(merged.back().tag, b.tag)) {
            merged.back().amp += b.amp;
        } else {
            merged.push_back(b);
        }
    }
    std::erase_if(merged, [](const Branch &b) { return b.amp == Complex(0.0); });
    branches_ = std::move(merged);
}

double PhaseTaggedState::physical_norm() const {
    double total = 0.0;
    for (const auto &a : branches_) {
        for (const auto &b : branches_) {
            if (a.basis == b.basis) {
                total += (a.amp * std::conj(b.amp) *
                          char_fn(spectrum_, b.tag.lam2 - a.tag.lam2, b.tag.lam3 - a.tag.lam3))
                             .real();
            }
        }
    }
    return total;
}

std::size_t PhaseTaggedState::max_tags_per_basis() const {
    std::size_t best = 0;
    std::size_t run = 0;
    for (std::size_t i = 0; i < branches_.size(); ++i) {
        run = (i > 0 && branches_[i].basis == branches_[i - 1].basis) ? run + 1 : 1;
        best = std::max(best, run);
    }
    return best;
}

PhaseTaggedState dephase(const PhaseTaggedState &state, const DephasingEvent &event, int target) {
    event.validate();
    require(target >= 0 && target < state.qubit_count(), "dephase: target qubit out of range");
    require(state.photons()[target] == event.photon, "dephase: event photon does not match target qubit");
    std::uint32_t mask = bit_of(target, state.qubit_count());
    double shift = event.phase_coefficient();
    std::vector<Branch> out = state.branches();
    for (auto &b : out) {
        if (b.basis & mask) {
            (event.photon == 2 ? b.tag.lam2 : b.tag.lam3) += shift;
        }
    }
    return PhaseTaggedState(state.spectrum(), state.photons(), std::move(out));
}

PhaseTaggedState apply_local_unitary(const PhaseTaggedState &state, const Unitary &u, int target) {
    require(u.dim() == 2, "apply_local_unitary: expected a single-qubit unitary");
    require(target >= 0 && target < state.qubit_count(), "apply_local_unitary: target qubit out of range");
    std::uint32_t mask = bit_of(target, state.qubit_count());
    std::vector<Branch> out;
    out.reserve(2 * state.branches().size());
    for (const auto &b : state.branches()) {
        int in_bit = (b.basis & mask) ? 1 : 0;
        for (int out_bit = 0; out_bit < 2; ++out_bit) {
            Complex coef = u(out_bit, in_bit);
            if (coef == Complex(0.0)) {
                continue;
            }
            std::uint32_t basis = out_bit ? (b.basis | mask) : (b.basis & ~mask);
            out.push_back({basis, coef * b.amp, b.tag});
        }
    }
    return PhaseTaggedState(state.spectrum(), state.photons(), std::move(out));
}

BellProjection project_bell(const PhaseTaggedState &state, BellOutcome outcome) {
    require(state.qubit_count() == 3, "project_bell: expected a three-qubit state");
    StateVector bell = bell_state(outcome);
    std::vector<Branch> projected;
    for (const auto &b : state.branches()) {
        std::uint32_t pair = b.basis >> 1;
        Complex coef = std::conj(bell[pair]);
        if (coef == Complex(0.0)) {
            continue;
        }
        projected.push_back({b.basis & 1U, coef * b.amp, b.tag});
    }
    PhaseTaggedState remnant(state.spectrum(), {state.photons()[2]}, std::move(projected));
    double p = remnant.physical_norm();
    if (!(p > kMinProbability)) {
        throw ZeroProbabilityError(std::string("Bell outcome ") + to_string(outcome) + " has zero probability");
    }
    double scale = 1.0 / std::sqrt(p);
    for (auto &b : remnant.branches_) {
        b.amp *= scale;
    }
    return {p, std::move(remnant)};
}

DensityMatrix reduce(const PhaseTaggedState &state) {
    Eigen::Index dim = Eigen::Index{1} << state.qubit_count();
    CMatrix rho = CMatrix::Zero(dim, dim);
    const auto &br = state.branches();
    for (const auto &a : br) {
        for (const auto &b : br) {
            rho(a.basis, b.basis) +=
                a.amp * std::conj(b.amp) *
                char_fn(state.spectrum(), b.tag.lam2 - a.tag.lam2, b.tag.lam3 - a.tag.lam3);
        }
    }
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityMatrix(std::move(rho));
}

}  // namespace memtele
