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

#include "gtest/gtest.h"
#include "memtele/errors.h"

using namespace memtele;

namespace {

// Brute-force oracle: first sign change of f_memory - f_optimal on a fine
// logarithmic grid on (0, 1).
double scan_crossover(double dk) {
    double prev_k = 1e-12;
    double prev_gap = 0.5 + 0.5 * std::pow(prev_k, 2 * dk) - (prev_k + 2) / 3;
    for (int i = 1; i < 2000000; ++i) {
        double k = std::pow(10.0, -12.0 + 12.0 * i / 2000000.0);
        double gap = 0.5 + 0.5 * std::pow(k, 2 * dk) - (k + 2) / 3;
        if (prev_gap < 0 && gap >= 0) {
            return 0.5 * (prev_k + k);
        }
        prev_k = k;
        prev_gap = gap;
    }
    return -1;
}

}  // namespace

TEST(analysis, f_memory_examples) {
    for (double k : {1e-6, 0.1, 0.5, 1.0}) {
        EXPECT_EQ(f_memory(k, 0.0), 1.0);
    }
    EXPECT_EQ(f_memory(0.0, 0.0), 1.0);
    EXPECT_NEAR(f_memory(0.1, 0.1), 0.5 + 0.5 * std::pow(0.1, 0.2), 1e-15);
    EXPECT_NEAR(f_memory(0.1, 0.1), 0.81548, 1e-5);
    for (int i = 0; i <= 100; ++i) {
        double k = i / 100.0;
        EXPECT_NEAR(f_memory(k, 0.5), f_standard(k), 1e-12);
    }
    EXPECT_EQ(f_memory(0.3, 0.2, 1.0), 1.0);
    EXPECT_EQ(f_memory(0.3, 0.2, 0.0), 1.0);
}

TEST(analysis, f_standard_and_f_optimal_endpoints) {
    EXPECT_EQ(f_standard(1.0), 1.0);
    EXPECT_EQ(f_standard(0.0), 0.5);
    EXPECT_EQ(f_standard(0.5), 0.75);
    EXPECT_NEAR(f_optimal(0.0), 2.0 / 3.0, 1e-15);
    EXPECT_EQ(f_optimal(1.0), 1.0);
    EXPECT_NEAR(f_optimal(0.5), 5.0 / 6.0, 1e-15);
}

TEST(analysis, range_checks) {
    EXPECT_THROW(f_standard(-0.1), ContractViolation);
    EXPECT_THROW(f_optimal(1.1), ContractViolation);
    EXPECT_THROW(f_memory(0.5, -0.1), ContractViolation);
    EXPECT_THROW(f_memory(0.5, 2.1), ContractViolation);
    EXPECT_THROW(f_memory(0.5, 0.1, 1.5), ContractViolation);
    EXPECT_NO_THROW(f_memory(0.5, 2.0));
    EXPECT_THROW(figure2_sweep({}, {0.1}), ContractViolation);
    EXPECT_THROW(figure2_sweep({0.5}, {}), ContractViolation);
    EXPECT_THROW(figure2_sweep({1.5}, {0.1}), ContractViolation);
}

TEST(analysis, figure2_endpoints) {
    auto points = figure2_sweep({0.0, 1.0}, {0.0});
    ASSERT_EQ(points.size(), 2u);
    EXPECT_EQ(points[0].f_standard, 0.5);
    EXPECT_NEAR(points[0].f_optimal, 2.0 / 3.0, 1e-15);
    EXPECT_EQ(points[0].f_memory[0].second, 1.0);
    EXPECT_EQ(points[1].f_standard, 1.0);
    EXPECT_EQ(points[1].f_optimal, 1.0);
    EXPECT_EQ(points[1].f_memory[0].second, 1.0);
}

TEST(analysis, figure2_dominance) {
    auto grid = unit_grid(1001);
    auto points = figure2_sweep(grid, {0.0, 0.02, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5});
    for (const auto &p : points) {
        for (const auto &[dk, f] : p.f_memory) {
            if (dk <= 0.1 && p.kappa_abs >= 0.01) {
                EXPECT_GE(f, p.f_optimal) << "dk=" << dk << " kappa=" << p.kappa_abs;
            }
            EXPECT_GE(f, p.f_standard - 1e-15);
            EXPECT_GE(f, 0.5);
            EXPECT_LE(f, 1.0);
        }
    }
}

TEST(analysis, unit_grid_spacing) {
    auto g = unit_grid(5);
    EXPECT_EQ(g.front(), 0.0);
    EXPECT_EQ(g.back(), 1.0);
    EXPECT_EQ(g[2], 0.5);
    EXPECT_THROW(unit_grid(1), ContractViolation);
}

TEST(analysis, crossover_matches_scan_oracle) {
    for (double dk : {0.05, 0.1, 0.2, 0.3}) {
        double oracle = scan_crossover(dk);
        double found = crossover(dk);
        ASSERT_GT(oracle, 0);
        EXPECT_NEAR(found, oracle, 2e-5 * oracle + 1e-10) << "dk=" << dk;
        // Sign change across the returned bracket.
        EXPECT_LT(f_memory(found - kCrossoverTol, dk), f_optimal(found - kCrossoverTol)) << "dk=" << dk;
        EXPECT_GT(f_memory(found + kCrossoverTol, dk), f_optimal(found + kCrossoverTol)) << "dk=" << dk;
    }
    double k01 = crossover(0.1);
    EXPECT_GT(k01, 3e-3);
    EXPECT_LT(k01, 5e-3);
}

TEST(analysis, crossover_shrinks_to_zero_with_dk) {
    double prev = crossover(0.3);
    for (double dk : {0.25, 0.2, 0.15, 0.1, 0.07, 0.05, 0.025}) {
        double k = crossover(dk);
        EXPECT_LT(k, prev) << "dk=" << dk;
        prev = k;
    }
    EXPECT_LT(prev, 1e-9);
    EXPECT_GT(crossover(0.3), crossover(0.1));
}

TEST(analysis, no_crossover_at_or_above_one_third) {
    // f_memory - f_optimal is concave, -1/6 at 0 and 0 at 1 with slope
    // dk - 1/3 there, so it stays negative on [0, 1) once dk >= 1/3.
    for (double dk : {std::nextafter(1.0 / 3.0, 1.0), 0.34, 0.4, 0.45, 0.49}) {
        EXPECT_THROW(crossover(dk), NoCrossoverError) << "dk=" << dk;
    }
    EXPECT_THROW(crossover(0.0), ContractViolation);
    EXPECT_THROW(crossover(0.5), ContractViolation);
}

TEST(analysis, crossover_is_reproducible) {
    EXPECT_EQ(crossover(0.1), crossover(0.1));
}

TEST(analysis_property, f_memory_monotonicity) {
    for (int i = 0; i < 100; ++i) {
        double k = i / 100.0;
        double prev = 2.0;
        for (int j = 0; j <= 100; ++j) {
            double dk = 2.0 * j / 100.0;
            double f = f_memory(k, dk);
            EXPECT_LE(f, prev + 1e-15);
            prev = f;
        }
    }
    for (double dk : {0.0, 0.1, 0.5, 1.5}) {
        double prev = -1.0;
        for (int i = 0; i <= 1000; ++i) {
            double f = f_memory(i / 1000.0, dk);
            EXPECT_GE(f, prev - 1e-15);
            EXPECT_GE(f, 0.5);
            EXPECT_LE(f, 1.0);
            prev = f;
        }
    }
}
