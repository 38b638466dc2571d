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

#include "memtele/oracle.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "memtele/errors.h"

namespace memtele {

namespace {

// Amplitude amp * e^{i angle}. The per-sample frequency phases are kept as
// exact angles so that phases which cancel do so without rounding.
struct PolarAmp {
    Complex amp = 0.0;
    double angle = 0.0;
};

struct Term {
    Complex coef;
    const PolarAmp *value;
};

// Linear combination; the angle is factored out when all contributing terms
// share it.
template <std::size_t N>
PolarAmp combine(const std::array<Term, N> &terms) {
    const PolarAmp *first = nullptr;
    bool shared = true;
    for (const auto &t : terms) {
        if (t.coef == Complex(0.0) || t.value->amp == Complex(0.0)) {
            continue;
        }
        if (first == nullptr) {
            first = t.value;
        } else if (t.value->angle != first->angle) {
            shared = false;
        }
    }
    if (first == nullptr) {
        return {};
    }
    PolarAmp out{0.0, shared ? first->angle : 0.0};
    for (const auto &t : terms) {
        if (t.coef == Complex(0.0) || t.value->amp == Complex(0.0)) {
            continue;
        }
        out.amp += shared ? t.coef * t.value->amp : t.coef * t.value->amp * std::polar(1.0, t.value->angle);
    }
    return out;
}

// Bivariate running moments of (w, y = w x) plus the plain moments of x, in
// the pairwise-mergeable form of Chan et al.
struct WeightedStat {
    double n = 0;
    double mean_w = 0, mean_y = 0, mean_x = 0;
    double c_ww = 0, c_yy = 0, c_wy = 0, c_xx = 0;

    void add(double w, double x) {
        double y = w * x;
        n += 1;
        double dw = w - mean_w;
        double dy = y - mean_y;
        double dx = x - mean_x;
        mean_w += dw / n;
        mean_y += dy / n;
        mean_x += dx / n;
        c_ww += dw * (w - mean_w);
        c_yy += dy * (y - mean_y);
        c_wy += dw * (y - mean_y);
        c_xx += dx * (x - mean_x);
    }

    void merge(const WeightedStat &o) {
        if (o.n == 0) {
            return;
        }
        if (n == 0) {
            *this = o;
            return;
        }
        double total = n + o.n;
        double dw = o.mean_w - mean_w;
        double dy = o.mean_y - mean_y;
        double dx = o.mean_x - mean_x;
        double f = n * o.n / total;
        c_ww += o.c_ww + dw * dw * f;
        c_yy += o.c_yy + dy * dy * f;
        c_wy += o.c_wy + dw * dy * f;
        c_xx += o.c_xx + dx * dx * f;
        mean_w += dw * o.n / total;
        mean_y += dy * o.n / total;
        mean_x += dx * o.n / total;
        n = total;
    }

    // Ratio estimate sum(w x) / sum(w) with its delta-method standard error.
    Estimate ratio() const {
        double r = mean_y / mean_w;
        double var = (c_yy - 2.0 * r * c_wy + r * r * c_ww) / (n * (n - 1)) / (mean_w * mean_w);
        return {r, std::sqrt(std::max(var, 0.0))};
    }

    Estimate weight() const { return {mean_w, std::sqrt(std::max(c_ww, 0.0) / (n * (n - 1)))}; }

    double x_variance() const { return std::max(c_xx, 0.0) / (n - 1); }
};

// Quantities per outcome: fidelity, then (re, im) of rho00, rho01, rho10, rho11.
constexpr std::size_t kQuantities = 9;

struct OutcomeStats {
    std::array<WeightedStat, kQuantities> q;

    void merge(const OutcomeStats &o) {
        for (std::size_t i = 0; i < kQuantities; ++i) {
            q[i].merge(o.q[i]);
        }
    }
};

using PartitionStats = std::array<OutcomeStats, 4>;

// Per-config constants shared by every sample.
struct Plan {
    std::array<PolarAmp, 8> after_source;  // input (x) phi+, before any plate
    Complex alice_mean_phase;              // e^{i dn2 t2 mean} on photon 2 = V
    double alice_coef;                     // dn2 t2
    bool memory;
    Complex bob_mean_phase[4];
    double bob_coef[4];
    Complex gate[4];
    bool gate_on;
    StateVector bell[4];
    CMatrix correction[4];
    Complex alpha, beta;
};

Plan make_plan(const ProtocolConfig &config) {
    Plan plan{.after_source = {},
              .alice_mean_phase = 0.0,
              .alice_coef = 0.0,
              .memory = config.strategy == Strategy::MemoryAssisted,
              .bob_mean_phase = {},
              .bob_coef = {},
              .gate = {},
              .gate_on = config.phase.mode != PhaseGateSetting::Mode::Off,
              .bell = {bell_state(BellOutcome::PhiPlus), bell_state(BellOutcome::PhiMinus),
                       bell_state(BellOutcome::PsiPlus), bell_state(BellOutcome::PsiMinus)},
              .correction = {},
              .alpha = config.alpha,
              .beta = config.beta};
    double mean = config.spectrum.mean();
    const double s = 1.0 / std::sqrt(2.0);
    // photon 1 is bit 2, photon 2 bit 1, photon 3 bit 0; phi+ on (2, 3).
    for (int a = 0; a < 2; ++a) {
        Complex in = a == 0 ? config.alpha : config.beta;
        plan.after_source[static_cast<std::size_t>((a << 2) | 0b00)].amp = in * s;
        plan.after_source[static_cast<std::size_t>((a << 2) | 0b11)].amp = in * s;
    }
    plan.alice_coef = config.dn2 * config.t2;
    plan.alice_mean_phase = std::polar(1.0, plan.alice_coef * mean);
    for (auto outcome : kBellOutcomes) {
        auto i = static_cast<std::size_t>(outcome);
        const auto &rule = correction_rule(outcome);
        plan.correction[i] = rule.unitary.entries();
        plan.bob_coef[i] = rule.dn3_sign * (config.dn2 * config.effective_t3());
        plan.bob_mean_phase[i] = std::polar(1.0, plan.bob_coef[i] * mean);
        plan.gate[i] = std::polar(1.0, applied_phase(config, outcome));
    }
    return plan;
}

void accumulate_sample(const Plan &plan, const FrequencyDeviation &dev, PartitionStats &stats) {
    // Photon 2 through Alice's plate: |V> picks up e^{i dn2 t2 (mean + d2)}.
    std::array<PolarAmp, 8> state = plan.after_source;
    double alice_angle = plan.alice_coef * dev.d2;
    for (std::size_t i = 0; i < 8; ++i) {
        if (i & 0b010) {
            state[i].amp *= plan.alice_mean_phase;
            state[i].angle += alice_angle;
        }
    }

    for (std::size_t o = 0; o < 4; ++o) {
        const auto &bell = plan.bell[o];
        std::array<PolarAmp, 2> bob;
        for (std::size_t k = 0; k < 2; ++k) {
            bob[k] = combine(std::array<Term, 4>{Term{std::conj(bell[0]), &state[0b000 | k]},
                                                 Term{std::conj(bell[1]), &state[0b010 | k]},
                                                 Term{std::conj(bell[2]), &state[0b100 | k]},
                                                 Term{std::conj(bell[3]), &state[0b110 | k]}});
        }
        double p = std::norm(bob[0].amp) + std::norm(bob[1].amp);

        const CMatrix &u = plan.correction[o];
        std::array<PolarAmp, 2> corrected;
        for (Eigen::Index r = 0; r < 2; ++r) {
            corrected[static_cast<std::size_t>(r)] =
                combine(std::array<Term, 2>{Term{u(r, 0), &bob[0]}, Term{u(r, 1), &bob[1]}});
        }
        if (plan.memory) {
            corrected[1].amp *= plan.bob_mean_phase[o];
            corrected[1].angle += plan.bob_coef[o] * dev.d3;
        }
        if (plan.gate_on) {
            corrected[1].amp *= plan.gate[o];
        }
        double scale = 1.0 / std::sqrt(p);
        corrected[0].amp *= scale;
        corrected[1].amp *= scale;

        PolarAmp overlap = combine(std::array<Term, 2>{Term{std::conj(plan.alpha), &corrected[0]},
                                                       Term{std::conj(plan.beta), &corrected[1]}});
        double fidelity = std::norm(overlap.amp);

        auto &q = stats[o].q;
        q[0].add(p, fidelity);
        std::size_t slot = 1;
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                Complex rho = corrected[i].amp * std::conj(corrected[j].amp) *
                              std::polar(1.0, corrected[i].angle - corrected[j].angle);
                q[slot++].add(p, rho.real());
                q[slot++].add(p, rho.imag());
            }
        }
    }
}

}  // namespace

CMatrix OracleOutcome::rho_mean() const {
    CMatrix m(2, 2);
    for (Eigen::Index i = 0; i < 2; ++i) {
        for (Eigen::Index j = 0; j < 2; ++j) {
            auto ui = static_cast<std::size_t>(i);
            auto uj = static_cast<std::size_t>(j);
            m(i, j) = Complex(rho_re[ui][uj].mean, rho_im[ui][uj].mean);
        }
    }
    return m;
}

const OracleOutcome &OracleReport::at(BellOutcome outcome) const {
    for (const auto &o : outcomes) {
        if (o.outcome == outcome) {
            return o;
        }
    }
    throw ContractViolation("oracle report has no entry for this outcome");
}

OracleReport oracle_run(const ProtocolConfig &config, const OracleOptions &options) {
    config.validate();
    require(options.n_samples >= 100, "oracle_run: need at least 100 samples");
    require(options.partitions >= 1, "oracle_run: need at least one partition");
    require(options.threads >= 0, "oracle_run: thread count must be non-negative");

    const Plan plan = make_plan(config);
    const auto partitions = static_cast<std::size_t>(options.partitions);
    std::vector<PartitionStats> per_partition(partitions);

    auto work = [&](std::size_t part) {
        std::size_t count = options.n_samples / partitions + (part < options.n_samples % partitions ? 1 : 0);
        PairSampler sampler(config.spectrum, options.seed, part);
        auto &stats = per_partition[part];
        for (std::size_t i = 0; i < count; ++i) {
            accumulate_sample(plan, sampler.next_deviation(), stats);
        }
    };

    std::size_t threads = options.threads > 0 ? static_cast<std::size_t>(options.threads)
                                              : std::max(1U, std::thread::hardware_concurrency());
    threads = std::min(threads, partitions);
    if (threads <= 1) {
        for (std::size_t part = 0; part < partitions; ++part) {
            work(part);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t part = next++; part < partitions; part = next++) {
                    work(part);
                }
            });
        }
    }

    PartitionStats total{};
    for (const auto &part : per_partition) {
        for (std::size_t o = 0; o < 4; ++o) {
            total[o].merge(part[o]);
        }
    }

    OracleReport report{config, options.n_samples, options.seed, options.partitions, {}};
    for (auto outcome : kBellOutcomes) {
        const auto &q = total[static_cast<std::size_t>(outcome)].q;
        OracleOutcome out{};
        out.outcome = outcome;
        out.probability = q[0].weight();
        out.fidelity = q[0].ratio();
        out.fidelity_sample_variance = q[0].x_variance();
        std::size_t slot = 1;
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                out.rho_re[i][j] = q[slot++].ratio();
                out.rho_im[i][j] = q[slot++].ratio();
            }
        }
        report.outcomes.push_back(out);
    }
    return report;
}

ComparisonSummary compare(const TeleportationReport &engine, const OracleReport &oracle, double sigma_budget) {
    require(engine.config == oracle.config, "compare: reports come from different configurations");
    require(std::isfinite(sigma_budget) && sigma_budget >= 0, "compare: sigma budget must be non-negative");

    ComparisonSummary summary{true, sigma_budget, {}, {}};
    double worst_ratio = -1.0;
    auto check = [&](std::string label, double exact, const Estimate &est) {
        double delta = exact - est.mean;
        double allowance = sigma_budget * est.std_error + kCompareAbsFloor;
        Deviation d{std::move(label), delta, est.std_error, std::abs(delta) <= allowance};
        double ratio = std::abs(delta) / allowance;
        if (ratio > worst_ratio) {
            worst_ratio = ratio;
            summary.worst = d;
        }
        summary.pass = summary.pass && d.ok;
        summary.entries.push_back(std::move(d));
    };

    for (auto outcome : kBellOutcomes) {
        const auto &e = engine.at(outcome);
        const auto &o = oracle.at(outcome);
        std::string tag = to_string(outcome);
        check(tag + " probability", e.probability, o.probability);
        check(tag + " fidelity", e.fidelity, o.fidelity);
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                Complex exact = e.output(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                std::string idx = std::to_string(i) + std::to_string(j);
                check(tag + " re rho" + idx, exact.real(), o.rho_re[i][j]);
                check(tag + " im rho" + idx, exact.imag(), o.rho_im[i][j]);
            }
        }
    }
    return summary;
}

Complex empirical_char_fn(const JointSpectrum &spec, double lambda2, double lambda3, std::size_t n,
                          std::uint64_t seed) {
    Complex acc = 0.0;
    for (const auto &pair : sample_pairs(spec, n, seed)) {
        acc += std::polar(1.0, -(lambda2 * pair.omega2 + lambda3 * pair.omega3));
    }
    return acc / static_cast<double>(n);
}

}  // namespace memtele
