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

// Closed-form teleportation fidelities as functions of |kappa2|.
//
//   standard scheme:        1 - (1 - |k|) / 2
//   optimal memoryless:     (|k| + 2) / 3
//   memory assisted:        1 - 2 p (1 - p) (1 - |k|^(2 dK)),  p = |alpha|^2, K = -1 + dK

#include <utility>
#include <vector>

namespace memtele {

/// 0^0 is taken as 1: with dK = 0 the protocol is exact at every t2.
double f_memory(double kappa_abs, double delta_k, double alpha_sq = 0.5);
double f_standard(double kappa_abs);
double f_optimal(double kappa_abs);

struct FidelityCurvePoint {
    double kappa_abs;
    double f_standard;
    double f_optimal;
    /// Keyed by dK, in the order given to figure2_sweep.
    std::vector<std::pair<double, double>> f_memory;
};

std::vector<FidelityCurvePoint> figure2_sweep(const std::vector<double> &kappa_grid,
                                              const std::vector<double> &delta_k_list);

/// n evenly spaced points on [0, 1], endpoints included.
std::vector<double> unit_grid(int n);

/// Bisection bracket: the search runs on [kCrossoverEps, 1 - kCrossoverEps].
inline constexpr double kCrossoverEps = 1e-12;
inline constexpr double kCrossoverTol = 1e-10;

/// The kappa in (0, 1) where the worst-case memory-assisted fidelity meets the
/// optimal memoryless one. Throws NoCrossoverError when the bracket ends do
/// not differ in sign, which is the case for every dK >= 1/3.
double crossover(double delta_k);

}  // namespace memtele
