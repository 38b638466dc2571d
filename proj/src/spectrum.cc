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

#include "memtele/spectrum.h"

#include <algorithm>
#include <cmath>

#include "memtele/errors.h"

namespace memtele {

JointSpectrum::JointSpectrum(double omega0, double variance, double corr)
    : omega0_(omega0), variance_(variance), corr_(corr) {
    require(std::isfinite(omega0) && omega0 > 0, "spectrum: omega0 must be positive");
    require(std::isfinite(variance) && variance > 0, "spectrum: variance must be positive");
    require(std::isfinite(corr) && std::abs(corr) <= 1.0, "spectrum: correlation must lie in [-1, 1]");
}

Eigen::Matrix2d JointSpectrum::covariance() const {
    Eigen::Matrix2d c;
    c << variance_, corr_ * variance_, corr_ * variance_, variance_;
    return c;
}

void DephasingEvent::validate() const {
    require(photon == 2 || photon == 3, "dephasing: only photons 2 and 3 couple to an environment");
    require(std::isfinite(delta_n), "dephasing: birefringence must be finite");
    require(std::isfinite(duration) && duration >= 0, "dephasing: duration must be non-negative");
}

Complex char_fn(const JointSpectrum &spec, double lambda2, double lambda3) {
    double quad = spec.variance() * (lambda2 * lambda2 + 2.0 * spec.corr() * lambda2 * lambda3 + lambda3 * lambda3);
    // Rounding can push the quadratic form slightly negative at K = -1.
    quad = std::max(quad, 0.0);
    return std::polar(std::exp(-0.5 * quad), -(lambda2 + lambda3) * spec.mean());
}

Complex kappa2(const JointSpectrum &spec, const DephasingEvent &event) {
    event.validate();
    require(event.photon == 2, "kappa2: event must act on photon 2");
    return char_fn(spec, event.phase_coefficient(), 0.0);
}

double duration_for_kappa(const JointSpectrum &spec, double delta_n, double kappa_abs) {
    require(kappa_abs > 0 && kappa_abs <= 1, "kappa must lie in (0, 1]");
    require(delta_n != 0, "birefringence must be nonzero to reach a target kappa");
    return std::sqrt(-2.0 * std::log(kappa_abs) / (spec.variance() * delta_n * delta_n));
}

PairSampler::PairSampler(const JointSpectrum &spec, std::uint64_t seed, std::uint64_t stream)
    : mean_(spec.mean()),
      sigma_(std::sqrt(spec.variance())),
      corr_(spec.corr()),
      orth_(std::sqrt(std::max(0.0, 1.0 - spec.corr() * spec.corr()))) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    rng_.seed(seq);
}

FrequencyDeviation PairSampler::next_deviation() {
    double z1 = normal_(rng_);
    double d2 = sigma_ * z1;
    if (corr_ == -1.0) {
        return {d2, -d2};
    }
    if (corr_ == 1.0) {
        return {d2, d2};
    }
    double z2 = normal_(rng_);
    return {d2, sigma_ * (corr_ * z1 + orth_ * z2)};
}

FrequencyPair PairSampler::next() {
    auto d = next_deviation();
    return {mean_ + d.d2, mean_ + d.d3};
}

std::vector<FrequencyPair> sample_pairs(const JointSpectrum &spec, std::size_t n, std::uint64_t seed) {
    require(n >= 1, "sample_pairs: need at least one sample");
    PairSampler sampler(spec, seed);
    std::vector<FrequencyPair> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(sampler.next());
    }
    return out;
}

std::vector<FrequencyDeviation> sample_deviations(const JointSpectrum &spec, std::size_t n, std::uint64_t seed) {
    require(n >= 1, "sample_deviations: need at least one sample");
    PairSampler sampler(spec, seed);
    std::vector<FrequencyDeviation> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(sampler.next_deviation());
    }
    return out;
}

}  // namespace memtele
