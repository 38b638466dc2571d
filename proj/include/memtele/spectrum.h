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

// Correlated frequency environment of a photon pair.
//
// The two photon frequencies (w2, w3) are jointly Gaussian with a common mean
// omega0 / 2, a common variance C11 and correlation coefficient K. Everything
// the polarization sees of this environment goes through the characteristic
// function
//
//     char_fn(l2, l3) = E[exp(-i (l2 w2 + l3 w3))]
//                     = exp(-i (l2 + l3) omega0 / 2) * exp(-C11 (l2^2 + 2 K l2 l3 + l3^2) / 2).
//
// Frequencies and times are dimensionless model numbers; a product w * t is a
// phase in radians.

#include <cstdint>
#include <random>
#include <vector>

#include "memtele/qlinalg.h"

namespace memtele {

class JointSpectrum {
  public:
    /// omega0 > 0, variance > 0, |corr| <= 1.
    JointSpectrum(double omega0 = 2.0, double variance = 1.0, double corr = 0.0);

    double omega0() const { return omega0_; }
    /// Mean frequency of each photon, omega0 / 2.
    double mean() const { return 0.5 * omega0_; }
    double variance() const { return variance_; }
    double corr() const { return corr_; }
    Eigen::Matrix2d covariance() const;

    bool operator==(const JointSpectrum &) const = default;

  private:
    double omega0_;
    double variance_;
    double corr_;
};

/// Passage of one photon through a birefringent plate. Only the birefringence
/// n_V - n_H is stored: the common refractive index acts on the environment
/// alone and never reaches a reduced polarization state.
struct DephasingEvent {
    int photon = 2;
    double delta_n = 1.0;
    double duration = 0.0;

    void validate() const;
    /// Coefficient of the photon frequency in the phase acquired by |V>.
    double phase_coefficient() const { return delta_n * duration; }
};

Complex char_fn(const JointSpectrum &spec, double lambda2, double lambda3);

/// Local decoherence function of photon 2: char_fn(delta_n * t, 0).
Complex kappa2(const JointSpectrum &spec, const DephasingEvent &event);

/// Duration t2 for which |kappa2| equals `kappa_abs`, inverting
/// |kappa2| = exp(-C11 dn^2 t^2 / 2).
double duration_for_kappa(const JointSpectrum &spec, double delta_n, double kappa_abs);

struct FrequencyPair {
    double omega2;
    double omega3;
};

/// Frequencies measured from the common mean.
struct FrequencyDeviation {
    double d2;
    double d3;
};

/// Draws correlated deviations d3 = sigma (K z1 + sqrt(1 - K^2) z2), d2 = sigma z1.
/// For |K| = 1 the degenerate branch d3 = +-d2 is taken, which is exact in
/// floating point.
class PairSampler {
  public:
    PairSampler(const JointSpectrum &spec, std::uint64_t seed, std::uint64_t stream = 0);

    FrequencyDeviation next_deviation();
    FrequencyPair next();

  private:
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    double mean_;
    double sigma_;
    double corr_;
    double orth_;
};

std::vector<FrequencyPair> sample_pairs(const JointSpectrum &spec, std::size_t n, std::uint64_t seed);
std::vector<FrequencyDeviation> sample_deviations(const JointSpectrum &spec, std::size_t n, std::uint64_t seed);

}  // namespace memtele
