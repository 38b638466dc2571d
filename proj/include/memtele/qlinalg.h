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

// Dense complex linear algebra for states of one to three polarization qubits.
//
// Conventions used throughout the library:
//   * |H> is basis index 0 and |V> is basis index 1.
//   * Qubit 0 is the most significant bit of a basis index, so in a register
//     of photons (1, 2, 3) photon 1 is qubit 0 and |H V> has index 1.
//   * tensor(a, b) puts `a` in the more significant position.

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace memtele {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Tolerance for algebraic identities (normalization, Hermiticity, unitarity).
inline constexpr double kIdentityTol = 1e-12;
/// Floor on the smallest eigenvalue accepted as positive semidefinite.
inline constexpr double kPsdFloor = -1e-10;

/// Number of qubits for a power-of-two dimension; throws otherwise.
int qubits_for_dim(Eigen::Index dim);

class StateVector {
  public:
    /// Validates that the dimension is a power of two and the norm is one.
    explicit StateVector(CVector amps);
    StateVector(std::initializer_list<Complex> amps);

    /// Rescales `amps` to unit norm before validation.
    static StateVector normalized(CVector amps);
    static StateVector basis(int qubit_count, std::size_t index);

    const CVector &amps() const { return amps_; }
    Eigen::Index dim() const { return amps_.size(); }
    int qubit_count() const { return qubits_for_dim(amps_.size()); }
    Complex operator[](Eigen::Index i) const { return amps_(i); }

    static bool is_normalized(const CVector &amps, double tol = kIdentityTol);

  private:
    CVector amps_;
};

class DensityMatrix {
  public:
    /// Validates squareness, power-of-two dimension, Hermiticity and unit trace.
    /// Positivity is checked on demand by validate_psd().
    explicit DensityMatrix(CMatrix entries);

    static DensityMatrix from_pure(const StateVector &psi);
    static DensityMatrix maximally_mixed(int qubit_count);

    const CMatrix &entries() const { return entries_; }
    Eigen::Index dim() const { return entries_.rows(); }
    int qubit_count() const { return qubits_for_dim(entries_.rows()); }
    Complex operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

    Complex trace() const { return entries_.trace(); }
    std::vector<double> eigenvalues() const;
    double min_eigenvalue() const;
    void validate_psd(double floor = kPsdFloor) const;

  private:
    CMatrix entries_;
};

class Unitary {
  public:
    /// Validates U U^dagger = I within kIdentityTol.
    explicit Unitary(CMatrix entries);

    static Unitary identity(int qubit_count = 1);
    static Unitary pauli_x();
    static Unitary pauli_z();
    /// i*sigma_y taken literally: [[0, 1], [-1, 0]].
    static Unitary i_pauli_y();
    /// diag(1, e^{i theta}).
    static Unitary phase_gate(double theta);

    const CMatrix &entries() const { return entries_; }
    Eigen::Index dim() const { return entries_.rows(); }
    Complex operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

  private:
    CMatrix entries_;
};

enum class BellOutcome { PhiPlus = 0, PhiMinus = 1, PsiPlus = 2, PsiMinus = 3 };

inline constexpr std::array<BellOutcome, 4> kBellOutcomes = {
    BellOutcome::PhiPlus, BellOutcome::PhiMinus, BellOutcome::PsiPlus, BellOutcome::PsiMinus};

const char *to_string(BellOutcome outcome);
StateVector bell_state(BellOutcome outcome);

CMatrix kron(const CMatrix &a, const CMatrix &b);
StateVector tensor(const StateVector &a, const StateVector &b);
DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b);
Unitary tensor(const Unitary &a, const Unitary &b);

/// Reduced state on the qubits in `keep` (kept in ascending qubit order).
DensityMatrix partial_trace(const DensityMatrix &rho, int qubit_count, std::span<const int> keep);
DensityMatrix partial_trace(const DensityMatrix &rho, int qubit_count, std::initializer_list<int> keep);

/// The single-qubit `u` acting on `target` of an n-qubit register.
CMatrix embed(const Unitary &u, int target, int qubit_count);
DensityMatrix apply_unitary(const DensityMatrix &rho, const Unitary &u, int target, int qubit_count);

/// <phi|rho|phi>. The imaginary residue is checked against kIdentityTol and dropped.
double fidelity_pure(const StateVector &phi, const DensityMatrix &rho);

}  // namespace memtele
