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

// Random generators and an independent quadrature routine shared by the tests.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "memtele/qlinalg.h"
#include "memtele/spectrum.h"

namespace memtele::testing {

inline CMatrix ginibre(std::mt19937_64 &rng, Eigen::Index rows, Eigen::Index cols) {
    std::normal_distribution<double> n(0.0, 1.0);
    CMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            m(i, j) = Complex(n(rng), n(rng));
        }
    }
    return m;
}

inline StateVector random_state(std::mt19937_64 &rng, int qubits) {
    return StateVector::normalized(ginibre(rng, Eigen::Index{1} << qubits, 1).col(0));
}

inline DensityMatrix random_density(std::mt19937_64 &rng, int qubits) {
    Eigen::Index dim = Eigen::Index{1} << qubits;
    CMatrix a = ginibre(rng, dim, dim);
    CMatrix rho = a * a.adjoint();
    rho /= rho.trace();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityMatrix(rho);
}

inline Unitary random_unitary(std::mt19937_64 &rng, int qubits) {
    Eigen::Index dim = Eigen::Index{1} << qubits;
    Eigen::HouseholderQR<CMatrix> qr(ginibre(rng, dim, dim));
    return Unitary(qr.householderQ() * CMatrix::Identity(dim, dim));
}

/// E[exp(-i (l2 w2 + l3 w3))] by tensor trapezoid quadrature of the bivariate
/// Gaussian density written with the inverse covariance. Requires |K| < 1.
inline Complex quadrature_char_fn(const JointSpectrum &spec, double l2, double l3, int nodes = 1201,
                                  double half_width_sigmas = 11.0) {
    double mu = spec.mean();
    double c11 = spec.variance();
    double c12 = spec.corr() * c11;
    double det = c11 * c11 - c12 * c12;
    double i11 = c11 / det;
    double i12 = -c12 / det;
    double sigma = std::sqrt(c11);
    double lo = -half_width_sigmas * sigma;
    double h = 2.0 * half_width_sigmas * sigma / (nodes - 1);
    double norm = 1.0 / (2.0 * std::numbers::pi * std::sqrt(det));
    Complex acc = 0.0;
    for (int a = 0; a < nodes; ++a) {
        double x = lo + a * h;
        double wa = (a == 0 || a == nodes - 1) ? 0.5 : 1.0;
        for (int b = 0; b < nodes; ++b) {
            double y = lo + b * h;
            double wb = (b == 0 || b == nodes - 1) ? 0.5 : 1.0;
            double quad = i11 * x * x + 2.0 * i12 * x * y + i11 * y * y;
            double density = norm * std::exp(-0.5 * quad);
            acc += wa * wb * density * std::polar(1.0, -(l2 * (mu + x) + l3 * (mu + y)));
        }
    }
    return acc * h * h;
}

}  // namespace memtele::testing
