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

#include "memtele/cli.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "memtele/analysis.h"
#include "memtele/errors.h"
#include "memtele/oracle.h"
#include "memtele/protocol.h"
#include "memtele/spectrum.h"

namespace memtele::cli {

namespace {

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

std::string num(double v, int digits = 12) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) {
        s.append(width - s.size(), ' ');
    }
    return s;
}

struct ConfigFlags {
    double alpha_re = 1.0 / std::sqrt(2.0);
    double alpha_im = 0.0;
    double beta_re = 1.0 / std::sqrt(2.0);
    double beta_im = 0.0;
    double omega0 = 2.0;
    double var = 1.0;
    double corr = -0.9;
    double dn2 = 1.0;
    double t2 = 1.0;
    std::optional<double> t3;
    std::optional<double> kappa;
    std::string strategy = "memory";
    std::string phase = "auto";
};

void add_config_flags(CLI::App &app, ConfigFlags &f) {
    app.add_option("--alpha-re", f.alpha_re, "Re(alpha) of the input alpha|H> + beta|V>")->capture_default_str();
    app.add_option("--alpha-im", f.alpha_im, "Im(alpha)")->capture_default_str();
    app.add_option("--beta-re", f.beta_re, "Re(beta)")->capture_default_str();
    app.add_option("--beta-im", f.beta_im, "Im(beta)")->capture_default_str();
    app.add_option("--omega0", f.omega0, "Sum of the two mean photon frequencies")->capture_default_str();
    app.add_option("--var", f.var, "Variance of each photon frequency")->capture_default_str();
    app.add_option("--K", f.corr, "Frequency correlation coefficient in [-1, 1]")->capture_default_str();
    app.add_option("--dn2", f.dn2, "Birefringence of Alice's plate")->capture_default_str();
    auto *t2 = app.add_option("--t2", f.t2, "Duration of Alice's plate")->capture_default_str();
    auto *kappa = app.add_option("--kappa", f.kappa, "Target |kappa2| in (0, 1]; sets t2");
    t2->excludes(kappa);
    app.add_option("--t3", f.t3, "Duration of Bob's plate (default: t2)");
    app.add_option("--strategy", f.strategy, "standard | memory")
        ->check(CLI::IsMember({"standard", "memory"}))
        ->capture_default_str();
    app.add_option("--phase", f.phase, "Bob's phase gate: auto | off | <radians>")->capture_default_str();
}

ProtocolConfig build_config(const ConfigFlags &f) {
    try {
        ProtocolConfig config;
        Complex alpha(f.alpha_re, f.alpha_im);
        Complex beta(f.beta_re, f.beta_im);
        double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
        if (!std::isfinite(norm) || norm == 0.0) {
            throw UsageError("input amplitudes must be finite and not both zero");
        }
        config.alpha = alpha / norm;
        config.beta = beta / norm;
        config.spectrum = JointSpectrum(f.omega0, f.var, f.corr);
        config.dn2 = f.dn2;
        config.t2 = f.kappa ? duration_for_kappa(config.spectrum, f.dn2, *f.kappa) : f.t2;
        config.t3 = f.t3;
        config.strategy = f.strategy == "standard" ? Strategy::Standard : Strategy::MemoryAssisted;
        if (f.phase == "auto") {
            config.phase = PhaseGateSetting::automatic();
        } else if (f.phase == "off") {
            config.phase = PhaseGateSetting::off();
        } else {
            std::size_t used = 0;
            double radians = 0.0;
            try {
                radians = std::stod(f.phase, &used);
            } catch (const std::exception &) {
                used = 0;
            }
            if (used != f.phase.size() || !std::isfinite(radians)) {
                throw UsageError("--phase must be auto, off or a number of radians");
            }
            config.phase = PhaseGateSetting::fixed(radians);
        }
        config.validate();
        return config;
    } catch (const ContractViolation &e) {
        throw UsageError(e.what());
    }
}

void describe(const ProtocolConfig &c, std::ostream &out) {
    out << "strategy " << to_string(c.strategy) << ", K = " << num(c.spectrum.corr())
        << ", omega0 = " << num(c.spectrum.omega0()) << ", var = " << num(c.spectrum.variance())
        << ", dn2 = " << num(c.dn2) << ", t2 = " << num(c.t2) << ", t3 = " << num(c.effective_t3()) << "\n";
    out << "input alpha = " << num(c.alpha.real()) << (c.alpha.imag() < 0 ? " - " : " + ")
        << num(std::abs(c.alpha.imag())) << "i, beta = " << num(c.beta.real()) << (c.beta.imag() < 0 ? " - " : " + ")
        << num(std::abs(c.beta.imag())) << "i\n";
}

std::ofstream open_output(const std::string &path) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot open " + path + " for writing");
    }
    return file;
}

void finish_output(std::ofstream &file, const std::string &path) {
    file.flush();
    if (!file) {
        throw IoError("failed writing " + path);
    }
}

int cmd_run(const ConfigFlags &flags, const std::string &out_path, std::ostream &out) {
    ProtocolConfig config = build_config(flags);
    auto report = run(config);
    describe(config, out);
    out << "|kappa2| = " << num(std::abs(report.kappa2)) << ", |kappa(t2,t3)| = " << num(std::abs(report.kappa_joint))
        << "\n\n";
    out << pad("outcome", 9) << pad("probability", 16) << pad("fidelity", 18) << "phase_gate\n";
    for (const auto &o : report.outcomes) {
        out << pad(to_string(o.outcome), 9) << pad(fixed(o.probability, 12), 16) << pad(fixed(o.fidelity, 14), 18)
            << num(o.phase_gate) << "\n";
    }
    out << "\naverage fidelity:    " << fixed(report.average_fidelity, 14) << "\n";
    out << "worst-case fidelity: " << fixed(report.worst_fidelity, 14) << "\n";

    if (!out_path.empty()) {
        auto file = open_output(out_path);
        file << "outcome,probability,fidelity,phase_gate,rho_hh,rho_hv_re,rho_hv_im,rho_vv\n";
        for (const auto &o : report.outcomes) {
            file << to_string(o.outcome) << ',' << num(o.probability) << ',' << num(o.fidelity) << ','
                 << num(o.phase_gate) << ',' << num(o.output(0, 0).real()) << ',' << num(o.output(0, 1).real()) << ','
                 << num(o.output(0, 1).imag()) << ',' << num(o.output(1, 1).real()) << '\n';
        }
        finish_output(file, out_path);
    }
    return kOk;
}

std::string figure2_csv(const std::vector<FidelityCurvePoint> &points, const std::vector<double> &dks) {
    std::ostringstream csv;
    csv << "kappa_abs,f_standard,f_optimal";
    for (double dk : dks) {
        csv << ",f_memory_dk" << num(dk);
    }
    csv << '\n';
    for (const auto &p : points) {
        csv << num(p.kappa_abs) << ',' << num(p.f_standard) << ',' << num(p.f_optimal);
        for (const auto &[dk, f] : p.f_memory) {
            csv << ',' << num(f);
        }
        csv << '\n';
    }
    return csv.str();
}

// Every column must be nondecreasing in kappa and stay within [1/2, 1].
void validate_figure2(const std::vector<FidelityCurvePoint> &points) {
    auto columns = [](const FidelityCurvePoint &p) {
        std::vector<double> v{p.f_standard, p.f_optimal};
        for (const auto &[dk, f] : p.f_memory) {
            v.push_back(f);
        }
        return v;
    };
    for (std::size_t i = 0; i < points.size(); ++i) {
        auto cur = columns(points[i]);
        for (double f : cur) {
            if (!(f >= 0.5 - 1e-15 && f <= 1.0 + 1e-15)) {
                throw std::logic_error("figure2: fidelity outside [1/2, 1]");
            }
        }
        if (i > 0) {
            auto prev = columns(points[i - 1]);
            for (std::size_t c = 0; c < cur.size(); ++c) {
                if (cur[c] < prev[c]) {
                    throw std::logic_error("figure2: column " + std::to_string(c) + " is not monotone in kappa");
                }
            }
        }
    }
}

int cmd_figure2(int points, const std::vector<double> &dks, const std::string &out_path, std::ostream &out) {
    if (points < 2) {
        throw UsageError("--points must be at least 2");
    }
    for (double dk : dks) {
        if (!(dk >= 0.0 && dk <= 2.0)) {
            throw UsageError("--dk values must lie in [0, 2]");
        }
    }
    auto sweep = figure2_sweep(unit_grid(points), dks);
    validate_figure2(sweep);
    std::string csv = figure2_csv(sweep, dks);
    if (out_path.empty()) {
        out << csv;
    } else {
        auto file = open_output(out_path);
        file << csv;
        finish_output(file, out_path);
        out << "wrote " << sweep.size() << " rows to " << out_path << "\n";
    }
    return kOk;
}

int cmd_oracle(const ConfigFlags &flags, std::size_t samples, std::uint64_t seed, double sigma, int threads,
               std::ostream &out) {
    ProtocolConfig config = build_config(flags);
    if (samples < 100) {
        throw UsageError("--samples must be at least 100");
    }
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw UsageError("--sigma must be a non-negative number");
    }
    if (threads < 0) {
        throw UsageError("--threads must be non-negative");
    }
    auto engine = run(config);
    OracleOptions options;
    options.n_samples = samples;
    options.seed = seed;
    options.threads = threads;
    auto oracle = oracle_run(config, options);
    auto summary = compare(engine, oracle, sigma);

    describe(config, out);
    out << "samples " << samples << ", seed " << seed << ", sigma budget " << num(sigma) << "\n\n";
    out << pad("quantity", 22) << pad("engine", 20) << pad("oracle", 20) << pad("std_error", 14) << "delta\n";
    std::size_t k = 0;
    for (auto outcome : kBellOutcomes) {
        const auto &e = engine.at(outcome);
        const auto &o = oracle.at(outcome);
        auto row = [&](const std::string &label, double exact, const Estimate &est) {
            const auto &d = summary.entries[k++];
            out << pad(label, 22) << pad(fixed(exact, 14), 20) << pad(fixed(est.mean, 14), 20)
                << pad(num(est.std_error, 3), 14) << num(d.delta, 3) << (d.ok ? "" : "  FAIL") << "\n";
        };
        std::string tag = to_string(outcome);
        row(tag + " probability", e.probability, o.probability);
        row(tag + " fidelity", e.fidelity, o.fidelity);
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                Complex v = e.output(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                std::string idx = std::to_string(i) + std::to_string(j);
                row(tag + " re rho" + idx, v.real(), o.rho_re[i][j]);
                row(tag + " im rho" + idx, v.imag(), o.rho_im[i][j]);
            }
        }
    }
    out << "\nworst: " << summary.worst.label << " (delta " << num(summary.worst.delta, 3) << ", std_error "
        << num(summary.worst.std_error, 3) << ")\n";
    out << (summary.pass ? "PASS" : "FAIL") << ": engine and oracle agree within " << num(sigma)
        << " standard errors\n";
    return summary.pass ? kOk : kStatisticalFailure;
}

int cmd_crossover(const std::vector<double> &dks, std::ostream &out, std::ostream &err) {
    for (double dk : dks) {
        if (!(dk > 0.0 && dk < 0.5)) {
            throw UsageError("--dk values must lie in (0, 0.5)");
        }
    }
    out << "delta_k,kappa_star\n";
    for (double dk : dks) {
        try {
            double kappa_star = crossover(dk);
            out << num(dk) << ',' << num(kappa_star) << '\n';
        } catch (const NoCrossoverError &e) {
            err << "error: " << e.what() << "\n";
            return kNoCrossover;
        }
    }
    return kOk;
}

// Reads key=value files and files the unsectioned keys under the
// subcommand being run, so one flat file serves every command.
class FlatConfig : public CLI::ConfigINI {
  public:
    explicit FlatConfig(std::string section) : section_(std::move(section)) {}

    std::vector<CLI::ConfigItem> from_config(std::istream &input) const override {
        auto items = CLI::ConfigINI::from_config(input);
        if (!section_.empty()) {
            for (auto &item : items) {
                if (item.parents.empty()) {
                    item.parents = {section_};
                }
            }
        }
        return items;
    }

  private:
    std::string section_;
};

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Teleportation over a dephased photon pair with correlated frequency environments", "memtele"};
    app.require_subcommand(1);
    app.fallthrough();
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.set_config("--config", "", "Flat key=value file; command-line flags take precedence");
    std::string section;
    for (const auto &a : args) {
        if (a == "run" || a == "figure2" || a == "oracle" || a == "crossover") {
            section = a;
            break;
        }
    }
    app.config_formatter(std::make_shared<FlatConfig>(section));

    ConfigFlags run_flags;
    std::string run_out;
    auto *run_cmd = app.add_subcommand("run", "Evaluate all four Bell outcomes of one protocol configuration");
    add_config_flags(*run_cmd, run_flags);
    run_cmd->add_option("--out", run_out, "Also write the per-outcome results as CSV");

    int points = 101;
    std::vector<double> fig_dks{0.0, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5};
    std::string fig_out;
    auto *fig_cmd = app.add_subcommand("figure2", "Tabulate the standard, optimal and memory-assisted fidelities");
    fig_cmd->add_option("--points", points, "Number of |kappa2| grid points on [0, 1]")->capture_default_str();
    fig_cmd->add_option("--dk", fig_dks, "Comma-separated deviations dK = K + 1")->delimiter(',')->capture_default_str();
    fig_cmd->add_option("--out", fig_out, "CSV output path (default: standard output)");

    ConfigFlags oracle_flags;
    std::size_t samples = 100000;
    std::uint64_t seed = 42;
    double sigma = 4.0;
    int threads = 0;
    auto *oracle_cmd = app.add_subcommand("oracle", "Cross-check the exact engine against Monte Carlo sampling");
    add_config_flags(*oracle_cmd, oracle_flags);
    oracle_cmd->add_option("--samples", samples, "Number of frequency samples")->capture_default_str();
    oracle_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
    oracle_cmd->add_option("--sigma", sigma, "Allowed deviation in standard errors")->capture_default_str();
    oracle_cmd->add_option("--threads", threads, "Worker threads (0: all cores)")->capture_default_str();

    std::vector<double> cross_dks{0.1};
    auto *cross_cmd = app.add_subcommand("crossover", "Find where memory-assisted meets the optimal fidelity");
    cross_cmd->add_option("--dk", cross_dks, "Comma-separated dK values in (0, 0.5)")
        ->delimiter(',')
        ->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(std::move(reversed));
    } catch (const CLI::FileError &e) {
        err << "error: " << e.what() << "\n";
        return kIo;
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*run_cmd) {
            return cmd_run(run_flags, run_out, out);
        }
        if (*fig_cmd) {
            return cmd_figure2(points, fig_dks, fig_out, out);
        }
        if (*oracle_cmd) {
            return cmd_oracle(oracle_flags, samples, seed, sigma, threads, out);
        }
        if (*cross_cmd) {
            return cmd_crossover(cross_dks, out, err);
        }
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const IoError &e) {
        err << "I/O error: " << e.what() << "\n";
        return kIo;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kInternal;
}

}  // namespace memtele::cli
