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

#include "memtele/analysis.h"

#include <cmath>
#include <string>

#include "memtele/errors.h"

namespace memtele {

namespace {

void check_kappa(double kappa_abs) {
    require(std::isfinite(kappa_abs) && kappa_abs >= 0.0 && kappa_abs <= 1.0, "kappa_abs must lie in [0, 1]");
}

}  // namespace

double f_memory(double kappa_abs, double delta_k, double alpha_sq) {
    check_kappa(kappa_abs);
    require(std::isfinite(delta_k) && delta_k >= 0.0 && delta_k <= 2.0, "delta_k must lie in [0, 2]");
    require(std::isfinite(alpha_sq) && alpha_sq >= 0.0 && alpha_sq <= 1.0, "alpha_sq must lie in [0, 1]");
    double decay = (delta_k == 0.0) ? 1.0 : std::pow(kappa_abs, 2.0 * delta_k);
    return 1.0 - 2.0 * alpha_sq * (1.0 - alpha_sq) * (1.0 - decay);
}

double f_standard(double kappa_abs) {
    check_kappa(kappa_abs);
    return 1.0 - 0.5 * (1.0 - kappa_abs);
}

double f_optimal(double kappa_abs) {
    check_kappa(kappa_abs);
    return (kappa_abs + 2.0) / 3.0;
}

std::vector<double> unit_grid(int n) {
    require(n >= 2, "grid needs at least two points");
    std::vector<double> grid(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        grid[static_cast<std::size_t>(i)] = static_cast<double>(i) / (n - 1);
    }
    return grid;
}

std::vector<FidelityCurvePoint> figure2_sweep(const std::vector<double> &kappa_grid,
                                              const std::vector<double> &delta_k_list) {
    require(!kappa_grid.empty(), "figure2_sweep: empty kappa grid");
    require(!delta_k_list.empty(), "figure2_sweep: empty delta_k list");
    std::vector<FidelityCurvePoint> out;
    out.reserve(kappa_grid.size());
    for (double k : kappa_grid) {
        FidelityCurvePoint point{k, f_standard(k), f_optimal(k), {}};
        for (double dk : delta_k_list) {
            point.f_memory.emplace_back(dk, f_memory(k, dk));
        }
        out.push_back(std::move(point));
    }
    return out;
}

double crossover(double delta_k) {
    require(std::isfinite(delta_k) && delta_k > 0.0 && delta_k < 0.5, "crossover: delta_k must lie in (0, 0.5)");
    // f_memory - f_optimal, written so that nothing cancels near k = 1.
    auto gap = [delta_k](double k) { return 0.5 * std::expm1(2.0 * delta_k * std::log(k)) + (1.0 - k) / 3.0; };
    // The gap is concave and vanishes at k = 1 with slope delta_k - 1/3, so
    // a root below 1 needs delta_k < 1/3.
    if (3.0 * delta_k >= 1.0) {
        throw NoCrossoverError("no crossover in (0, 1) for delta_k = " + std::to_string(delta_k));
    }
    double lo = kCrossoverEps;
    double hi = 1.0 - kCrossoverEps;
    double g_lo = gap(lo);
    double g_hi = gap(hi);
    if (!(g_lo < 0.0 && g_hi > 0.0)) {
        throw NoCrossoverError("no crossover in (0, 1) for delta_k = " + std::to_string(delta_k));
    }
    while (hi - lo > kCrossoverTol) {
        double mid = 0.5 * (lo + hi);
        if (gap(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace memtele
