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

#include "memtele/qlinalg.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "memtele/errors.h"

namespace memtele {

int qubits_for_dim(Eigen::Index dim) {
    require(dim >= 1, "dimension must be positive");
    int n = 0;
    Eigen::Index d = 1;
    while (d < dim) {
        d <<= 1;
        ++n;
    }
    require(d == dim, "dimension " + std::to_string(dim) + " is not a power of two");
    return n;
}

// ---------------------------------------------------------------------------
// StateVector

bool StateVector::is_normalized(const CVector &amps, double tol) {
    return std::abs(amps.squaredNorm() - 1.0) <= tol;
}

StateVector::StateVector(CVector amps) : amps_(std::move(amps)) {
    qubits_for_dim(amps_.size());
    require(is_normalized(amps_), "state vector is not normalized");
}

StateVector::StateVector(std::initializer_list<Complex> amps)
    : StateVector(CVector(Eigen::Map<const CVector>(amps.begin(), static_cast<Eigen::Index>(amps.size())))) {
}

StateVector StateVector::normalized(CVector amps) {
    double norm = amps.norm();
    require(norm > 0, "cannot normalize the zero vector");
    return StateVector(CVector(amps / norm));
}

StateVector StateVector::basis(int qubit_count, std::size_t index) {
    Eigen::Index dim = Eigen::Index{1} << qubit_count;
    require(static_cast<Eigen::Index>(index) < dim, "basis index out of range");
    CVector v = CVector::Zero(dim);
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(std::move(v));
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(CMatrix entries) : entries_(std::move(entries)) {
    require(entries_.rows() == entries_.cols(), "density matrix must be square");
    qubits_for_dim(entries_.rows());
    double herm = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
    require(herm <= kIdentityTol, "density matrix is not Hermitian");
    require(std::abs(entries_.trace() - Complex(1.0)) <= kIdentityTol, "density matrix trace is not one");
}

DensityMatrix DensityMatrix::from_pure(const StateVector &psi) {
    return DensityMatrix(psi.amps() * psi.amps().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int qubit_count) {
    Eigen::Index dim = Eigen::Index{1} << qubit_count;
    return DensityMatrix(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

std::vector<double> DensityMatrix::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(entries_, Eigen::EigenvaluesOnly);
    const auto &ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

double DensityMatrix::min_eigenvalue() const {
    auto ev = eigenvalues();
    return *std::min_element(ev.begin(), ev.end());
}

void DensityMatrix::validate_psd(double floor) const {
    double lo = min_eigenvalue();
    require(lo >= floor, "density matrix has negative eigenvalue " + std::to_string(lo));
}

// ---------------------------------------------------------------------------
// Unitary

Unitary::Unitary(CMatrix entries) : entries_(std::move(entries)) {
    require(entries_.rows() == entries_.cols(), "unitary must be square");
    qubits_for_dim(entries_.rows());
    CMatrix err = entries_ * entries_.adjoint() - CMatrix::Identity(entries_.rows(), entries_.cols());
    require(err.cwiseAbs().maxCoeff() <= kIdentityTol, "matrix is not unitary");
}

Unitary Unitary::identity(int qubit_count) {
    Eigen::Index dim = Eigen::Index{1} << qubit_count;
    return Unitary(CMatrix::Identity(dim, dim));
}

Unitary Unitary::pauli_x() {
    CMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return Unitary(std::move(m));
}

Unitary Unitary::pauli_z() {
    CMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return Unitary(std::move(m));
}

Unitary Unitary::i_pauli_y() {
    CMatrix m(2, 2);
    m << 0, 1, -1, 0;
    return Unitary(std::move(m));
}

Unitary Unitary::phase_gate(double theta) {
    CMatrix m(2, 2);
    m << 1, 0, 0, std::polar(1.0, theta);
    return Unitary(std::move(m));
}

// ---------------------------------------------------------------------------
// Bell states

const char *to_string(BellOutcome outcome) {
    switch (outcome) {
        case BellOutcome::PhiPlus:
            return "phi+";
        case BellOutcome::PhiMinus:
            return "phi-";
        case BellOutcome::PsiPlus:
            return "psi+";
        case BellOutcome::PsiMinus:
            return "psi-";
    }
    return "?";
}

StateVector bell_state(BellOutcome outcome) {
    const double s = 1.0 / std::sqrt(2.0);
    switch (outcome) {
        case BellOutcome::PhiPlus:
            return StateVector{s, 0, 0, s};
        case BellOutcome::PhiMinus:
            return StateVector{s, 0, 0, -s};
        case BellOutcome::PsiPlus:
            return StateVector{0, s, s, 0};
        case BellOutcome::PsiMinus:
            return StateVector{0, s, -s, 0};
    }
    throw ContractViolation("unknown Bell outcome");
}

// ---------------------------------------------------------------------------
// Products and reductions

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

StateVector tensor(const StateVector &a, const StateVector &b) {
    return StateVector(CVector(kron(a.amps(), b.amps())));
}

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b) {
    return DensityMatrix(kron(a.entries(), b.entries()));
}

Unitary tensor(const Unitary &a, const Unitary &b) {
    return Unitary(kron(a.entries(), b.entries()));
}

DensityMatrix partial_trace(const DensityMatrix &rho, int qubit_count, std::span<const int> keep) {
    require(rho.dim() == (Eigen::Index{1} << qubit_count), "partial_trace: qubit count does not match dimension");
    require(!keep.empty(), "partial_trace: keep set is empty");
    std::vector<int> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    require(std::adjacent_find(kept.begin(), kept.end()) == kept.end(), "partial_trace: duplicate qubit index");
    require(kept.front() >= 0 && kept.back() < qubit_count, "partial_trace: qubit index out of range");

    std::vector<int> traced;
    for (int q = 0; q < qubit_count; ++q) {
        if (!std::binary_search(kept.begin(), kept.end(), q)) {
            traced.push_back(q);
        }
    }

    // Scatter a sub-register index onto the full register's bit positions.
    auto scatter = [qubit_count](std::size_t sub, const std::vector<int> &qubits) {
        std::size_t full = 0;
        int m = static_cast<int>(qubits.size());
        for (int k = 0; k < m; ++k) {
            if ((sub >> (m - 1 - k)) & 1U) {
                full |= std::size_t{1} << (qubit_count - 1 - qubits[k]);
            }
        }
        return full;
    };

    std::size_t keep_dim = std::size_t{1} << kept.size();
    std::size_t env_dim = std::size_t{1} << traced.size();
    CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(keep_dim), static_cast<Eigen::Index>(keep_dim));
    for (std::size_t i = 0; i < keep_dim; ++i) {
        std::size_t fi = scatter(i, kept);
        for (std::size_t j = 0; j < keep_dim; ++j) {
            std::size_t fj = scatter(j, kept);
            Complex acc = 0;
            for (std::size_t e = 0; e < env_dim; ++e) {
                std::size_t fe = scatter(e, traced);
                acc += rho(static_cast<Eigen::Index>(fi | fe), static_cast<Eigen::Index>(fj | fe));
            }
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
        }
    }
    return DensityMatrix(std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix &rho, int qubit_count, std::initializer_list<int> keep) {
    return partial_trace(rho, qubit_count, std::span<const int>(keep.begin(), keep.size()));
}

CMatrix embed(const Unitary &u, int target, int qubit_count) {
    require(u.dim() == 2, "embed: expected a single-qubit unitary");
    require(target >= 0 && target < qubit_count, "embed: target qubit out of range");
    CMatrix left = CMatrix::Identity(Eigen::Index{1} << target, Eigen::Index{1} << target);
    Eigen::Index right_dim = Eigen::Index{1} << (qubit_count - 1 - target);
    CMatrix right = CMatrix::Identity(right_dim, right_dim);
    return kron(kron(left, u.entries()), right);
}

DensityMatrix apply_unitary(const DensityMatrix &rho, const Unitary &u, int target, int qubit_count) {
    require(rho.dim() == (Eigen::Index{1} << qubit_count), "apply_unitary: qubit count does not match dimension");
    CMatrix full = embed(u, target, qubit_count);
    CMatrix out = full * rho.entries() * full.adjoint();
    // Restore exact Hermiticity lost to rounding.
    out = 0.5 * (out + out.adjoint()).eval();
    return DensityMatrix(std::move(out));
}

double fidelity_pure(const StateVector &phi, const DensityMatrix &rho) {
    require(phi.dim() == rho.dim(), "fidelity_pure: dimension mismatch");
    Complex f = phi.amps().dot(rho.entries() * phi.amps());
    require(std::abs(f.imag()) <= kIdentityTol * static_cast<double>(rho.dim()),
            "fidelity_pure: overlap has a non-negligible imaginary part");
    return std::clamp(f.real(), 0.0, 1.0);
}

}  // namespace memtele
