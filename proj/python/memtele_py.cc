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


#include <optional>
#include <string>

#include "memtele/analysis.h"
#include "memtele/errors.h"
#include "memtele/oracle.h"
#include "memtele/protocol.h"
#include "memtele/spectrum.h"
#include "pybind11/complex.h"
#include "pybind11/eigen.h"
#include "pybind11/pybind11.h"
#include "pybind11/stl.h"

namespace py = pybind11;
using namespace memtele;

namespace {

PhaseGateSetting parse_phase(const py::object &phase) {
    if (phase.is_none()) {
        return PhaseGateSetting::off();
    }
    if (py::isinstance<py::str>(phase)) {
        auto s = phase.cast<std::string>();
        if (s == "auto") {
            return PhaseGateSetting::automatic();
        }
        if (s == "off") {
            return PhaseGateSetting::off();
        }
        throw ContractViolation("phase must be 'auto', 'off', None or an angle in radians");
    }
    return PhaseGateSetting::fixed(phase.cast<double>());
}

py::object phase_to_python(const PhaseGateSetting &p) {
    switch (p.mode) {
        case PhaseGateSetting::Mode::Auto:
            return py::str("auto");
        case PhaseGateSetting::Mode::Off:
            return py::str("off");
        default:
            return py::float_(p.radians);
    }
}

py::dict estimate_dict(const Estimate &e) {
    py::dict d;
    d["mean"] = e.mean;
    d["std_error"] = e.std_error;
    return d;
}

}  // namespace

PYBIND11_MODULE(_memtele, m) {
    m.doc() = "Teleportation of a photon polarization qubit over correlated dephasing environments.";

    py::register_exception<ZeroProbabilityError>(m, "ZeroProbabilityError", PyExc_RuntimeError);
    py::register_exception<NoCrossoverError>(m, "NoCrossoverError", PyExc_RuntimeError);

    py::enum_<Strategy>(m, "Strategy")
        .value("STANDARD", Strategy::Standard)
        .value("MEMORY_ASSISTED", Strategy::MemoryAssisted);

    py::enum_<BellOutcome>(m, "BellOutcome")
        .value("PHI_PLUS", BellOutcome::PhiPlus)
        .value("PHI_MINUS", BellOutcome::PhiMinus)
        .value("PSI_PLUS", BellOutcome::PsiPlus)
        .value("PSI_MINUS", BellOutcome::PsiMinus)
        .def("__str__", [](BellOutcome o) { return std::string(to_string(o)); });

    py::class_<JointSpectrum>(m, "JointSpectrum")
        .def(py::init<double, double, double>(), py::arg("omega0") = 2.0, py::arg("variance") = 1.0,
             py::arg("corr") = 0.0)
        .def_property_readonly("omega0", &JointSpectrum::omega0)
        .def_property_readonly("variance", &JointSpectrum::variance)
        .def_property_readonly("corr", &JointSpectrum::corr)
        .def_property_readonly("mean", &JointSpectrum::mean)
        .def("covariance", &JointSpectrum::covariance)
        .def("__eq__", [](const JointSpectrum &a, const JointSpectrum &b) { return a == b; })
        .def("__repr__", [](const JointSpectrum &s) {
            return "JointSpectrum(omega0=" + py::repr(py::float_(s.omega0())).cast<std::string>() +
                   ", variance=" + py::repr(py::float_(s.variance())).cast<std::string>() +
                   ", corr=" + py::repr(py::float_(s.corr())).cast<std::string>() + ")";
        });

    py::class_<ProtocolConfig>(m, "ProtocolConfig")
        .def(py::init([](std::complex<double> alpha, std::complex<double> beta, const JointSpectrum &spectrum,
                         double dn2, double t2, std::optional<double> t3, Strategy strategy,
                         const py::object &phase) {
                 ProtocolConfig c;
                 c.alpha = alpha;
                 c.beta = beta;
                 c.spectrum = spectrum;
                 c.dn2 = dn2;
                 c.t2 = t2;
                 c.t3 = t3;
                 c.strategy = strategy;
                 c.phase = parse_phase(phase);
                 c.validate();
                 return c;
             }),
             py::arg("alpha") = std::complex<double>(1.0 / std::sqrt(2.0)),
             py::arg("beta") = std::complex<double>(1.0 / std::sqrt(2.0)), py::arg("spectrum") = JointSpectrum(),
             py::arg("dn2") = 1.0, py::arg("t2") = 0.0, py::arg("t3") = py::none(),
             py::arg("strategy") = Strategy::MemoryAssisted, py::arg("phase") = py::str("auto"))
        .def_readonly("alpha", &ProtocolConfig::alpha)
        .def_readonly("beta", &ProtocolConfig::beta)
        .def_readonly("spectrum", &ProtocolConfig::spectrum)
        .def_readonly("dn2", &ProtocolConfig::dn2)
        .def_readonly("t2", &ProtocolConfig::t2)
        .def_readonly("t3", &ProtocolConfig::t3)
        .def_readonly("strategy", &ProtocolConfig::strategy)
        .def_property_readonly("phase", [](const ProtocolConfig &c) { return phase_to_python(c.phase); });

    py::class_<OutcomeResult>(m, "OutcomeResult")
        .def_readonly("outcome", &OutcomeResult::outcome)
        .def_readonly("probability", &OutcomeResult::probability)
        .def_readonly("fidelity", &OutcomeResult::fidelity)
        .def_readonly("phase_gate", &OutcomeResult::phase_gate)
        .def_property_readonly("rho", [](const OutcomeResult &o) { return CMatrix(o.output.entries()); });

    py::class_<TeleportationReport>(m, "TeleportationReport")
        .def_readonly("config", &TeleportationReport::config)
        .def_readonly("outcomes", &TeleportationReport::outcomes)
        .def_readonly("average_fidelity", &TeleportationReport::average_fidelity)
        .def_readonly("worst_fidelity", &TeleportationReport::worst_fidelity)
        .def_readonly("kappa2", &TeleportationReport::kappa2)
        .def_readonly("kappa_joint", &TeleportationReport::kappa_joint)
        .def("at", &TeleportationReport::at, py::return_value_policy::reference_internal);

    m.def("run", &run, py::arg("config"), "Evaluates all four Bell outcomes exactly.");
    m.def("worst_case_fidelity", &worst_case_fidelity, py::arg("config"));
    m.def("auto_phase", &auto_phase, py::arg("config"), py::arg("outcome") = BellOutcome::PhiPlus);

    m.def("char_fn", &char_fn, py::arg("spectrum"), py::arg("lambda2"), py::arg("lambda3"));
    m.def(
        "kappa2",
        [](const JointSpectrum &spec, double dn2, double t2) { return kappa2(spec, DephasingEvent{2, dn2, t2}); },
        py::arg("spectrum"), py::arg("dn2"), py::arg("t2"));
    m.def("duration_for_kappa", &duration_for_kappa, py::arg("spectrum"), py::arg("dn2"), py::arg("kappa_abs"));

    m.def("f_memory", &f_memory, py::arg("kappa_abs"), py::arg("delta_k"), py::arg("alpha_sq") = 0.5);
    m.def("f_standard", &f_standard, py::arg("kappa_abs"));
    m.def("f_optimal", &f_optimal, py::arg("kappa_abs"));
    m.def("crossover", &crossover, py::arg("delta_k"));
    m.def(
        "figure2_sweep",
        [](const std::vector<double> &grid, const std::vector<double> &dks) {
            py::list rows;
            for (const auto &p : figure2_sweep(grid, dks)) {
                py::dict row;
                row["kappa_abs"] = p.kappa_abs;
                row["f_standard"] = p.f_standard;
                row["f_optimal"] = p.f_optimal;
                py::dict mem;
                for (const auto &[dk, f] : p.f_memory) {
                    mem[py::float_(dk)] = f;
                }
                row["f_memory"] = mem;
                rows.append(row);
            }
            return rows;
        },
        py::arg("kappa_grid"), py::arg("delta_ks"));

    py::class_<OracleReport>(m, "OracleReport")
        .def_readonly("n_samples", &OracleReport::n_samples)
        .def_readonly("seed", &OracleReport::seed)
        .def_property_readonly("outcomes", [](const OracleReport &r) {
            py::list out;
            for (const auto &o : r.outcomes) {
                py::dict d;
                d["outcome"] = o.outcome;
                d["probability"] = estimate_dict(o.probability);
                d["fidelity"] = estimate_dict(o.fidelity);
                d["fidelity_sample_variance"] = o.fidelity_sample_variance;
                d["rho"] = o.rho_mean();
                out.append(d);
            }
            return out;
        });

    m.def(
        "oracle_run",
        [](const ProtocolConfig &config, std::size_t n_samples, std::uint64_t seed, int threads) {
            OracleOptions opts;
            opts.n_samples = n_samples;
            opts.seed = seed;
            opts.threads = threads;
            py::gil_scoped_release release;
            return oracle_run(config, opts);
        },
        py::arg("config"), py::arg("n_samples") = 100000, py::arg("seed") = 42, py::arg("threads") = 0);

    m.def(
        "compare",
        [](const TeleportationReport &engine, const OracleReport &oracle, double sigma) {
            auto s = compare(engine, oracle, sigma);
            py::dict d;
            d["pass"] = s.pass;
            d["sigma_budget"] = s.sigma_budget;
            py::list entries;
            for (const auto &e : s.entries) {
                entries.append(py::make_tuple(e.label, e.delta, e.std_error, e.ok));
            }
            d["entries"] = entries;
            d["worst"] = s.worst.label;
            return d;
        },
        py::arg("engine"), py::arg("oracle"), py::arg("sigma") = 4.0);
}
