// Copyright 2026 The ttload Authors
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

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "json.hpp"

#include "ttload/circuit.hpp"
#include "ttload/config.hpp"
#include "ttload/cross.hpp"
#include "ttload/errors.hpp"
#include "ttload/io.hpp"
#include "ttload/metrics.hpp"
#include "ttload/pipeline.hpp"
#include "ttload/statevector.hpp"
#include "ttload/tensor_train.hpp"

namespace py = pybind11;
using namespace ttload;

namespace {

py::array_t<double> core_to_array(const TTCore &c) {
    py::array_t<double> out({c.left(), c.mode(), c.right()});
    std::copy(c.data().begin(), c.data().end(), out.mutable_data());
    return out;
}

TensorTrain tt_from_arrays(const std::vector<py::array_t<double, py::array::c_style | py::array::forcecast>> &cores) {
    std::vector<TTCore> out;
    for (const auto &a : cores) {
        if (a.ndim() != 3) throw std::invalid_argument("every core must be a 3-d array (left, mode, right)");
        const auto l = std::size_t(a.shape(0)), n = std::size_t(a.shape(1)), r = std::size_t(a.shape(2));
        out.emplace_back(l, n, r, std::vector<double>(a.data(), a.data() + a.size()));
    }
    return TensorTrain(std::move(out));
}

py::dict cross_report_dict(const CrossReport &r) {
    py::dict d;
    d["sweeps_run"] = r.sweeps_run;
    d["function_evaluations"] = r.function_evaluations;
    d["validation_evaluations"] = r.validation_evaluations;
    d["evaluations_per_sweep"] = r.evaluations_per_sweep;
    d["error_history"] = r.error_history;
    d["final_validation_error"] = r.final_validation_error;
    d["converged"] = r.converged;
    return d;
}

py::array_t<std::complex<double>> amps_to_array(const Eigen::VectorXcd &v) {
    py::array_t<std::complex<double>> out(v.size());
    std::copy(v.data(), v.data() + v.size(), out.mutable_data());
    return out;
}

Eigen::VectorXcd array_to_amps(const py::array_t<std::complex<double>, py::array::forcecast> &a) {
    if (a.ndim() != 1) throw std::invalid_argument("expected a 1-d amplitude array");
    Eigen::VectorXcd v(a.shape(0));
    std::copy(a.data(), a.data() + a.size(), v.data());
    return v;
}

StateVector as_state(const py::array_t<std::complex<double>, py::array::forcecast> &a) {
    Eigen::VectorXcd v = array_to_amps(a);
    int d = 0;
    while ((Eigen::Index(1) << d) < v.size()) ++d;
    if ((Eigen::Index(1) << d) != v.size()) throw std::invalid_argument("amplitude count is not a power of two");
    return StateVector{d, std::move(v)};
}

ExperimentConfig as_config(const py::object &cfg) {
    if (py::isinstance<ExperimentConfig>(cfg)) return cfg.cast<ExperimentConfig>();
    if (py::isinstance<py::str>(cfg)) return parse_config(cfg.cast<std::string>());
    return parse_config(py::module_::import("json").attr("dumps")(cfg).cast<std::string>());
}

py::list report_rows(const ExperimentReport &rep) {
    const auto doc = nlohmann::json::parse(format_report(rep, ReportFormat::json));
    return py::module_::import("json").attr("loads")(doc["rows"].dump()).cast<py::list>();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Tensor-train state preparation: fitting, compilation and simulation.";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    auto config_error = py::register_exception<ConfigError>(m, "ConfigError", error.ptr());
    py::register_exception<SchemaError>(m, "SchemaError", config_error.ptr());
    auto numeric_error = py::register_exception<NumericError>(m, "NumericError", error.ptr());
    py::register_exception<RankDeficientError>(m, "RankDeficientError", numeric_error.ptr());
    py::register_exception<InputFunctionError>(m, "InputFunctionError", numeric_error.ptr());
    py::register_exception<CapacityError>(m, "CapacityError", numeric_error.ptr());
    py::register_exception<IoError>(m, "IoError", error.ptr());

    py::class_<TensorTrain>(m, "TensorTrain")
        .def(py::init(&tt_from_arrays), py::arg("cores"))
        .def_property_readonly("cores",
                               [](const TensorTrain &tt) {
                                   py::list out;
                                   for (const auto &c : tt.cores()) out.append(core_to_array(c));
                                   return out;
                               })
        .def_property_readonly("ranks", &TensorTrain::ranks)
        .def_property_readonly("modes", &TensorTrain::modes)
        .def("__len__", &TensorTrain::order)
        .def("__call__", [](const TensorTrain &tt, const std::vector<int> &idx) { return tt_eval(tt, idx); })
        .def("to_dense",
             [](const TensorTrain &tt) {
                 DenseTensor d = tt_to_dense(tt);
                 py::array_t<double> out(d.shape());
                 std::copy(d.data().begin(), d.data().end(), out.mutable_data());
                 return out;
             })
        .def("norm", &tt_norm)
        .def("round", &tt_round, py::arg("rel_tol"), py::arg("max_rank") = kUnboundedRank)
        .def("pad_ranks_pow2", &pad_ranks_pow2)
        .def("to_json", &tt_to_json)
        .def_static("from_json", &tt_from_json);

    m.def(
        "tt_cross",
        [](const std::function<double(std::vector<int>)> &f, const std::vector<std::size_t> &shape,
           std::size_t max_rank, double rel_tol, std::size_t max_sweeps, std::size_t rank_increment,
           std::uint64_t seed, std::size_t validation_samples) {
            CrossConfig cfg;
            cfg.max_rank = max_rank;
            cfg.rel_tol = rel_tol;
            cfg.max_sweeps = max_sweeps;
            cfg.rank_increment = rank_increment;
            cfg.rng_seed = seed;
            cfg.validation_samples = validation_samples;
            CrossResult res = tt_cross(
                [&f](std::span<const int> idx) { return f(std::vector<int>(idx.begin(), idx.end())); }, shape, cfg);
            return py::make_tuple(std::move(res.tt), cross_report_dict(res.report));
        },
        py::arg("f"), py::arg("shape"), py::arg("max_rank") = 8, py::arg("rel_tol") = 1e-10,
        py::arg("max_sweeps") = 8, py::arg("rank_increment") = 2, py::arg("seed") = 1,
        py::arg("validation_samples") = 1000, "Fits a tensor train to f(index list) from sampled entries.");

    py::class_<CircuitPlan>(m, "CircuitPlan")
        .def_readonly("num_qubits", &CircuitPlan::num_qubits)
        .def_readonly("normalizer", &CircuitPlan::normalizer)
        .def_property_readonly("gate_count", &CircuitPlan::total_gate_count)
        .def_property_readonly("depth", &CircuitPlan::depth)
        .def_property_readonly("max_gate_width", [](const CircuitPlan &p) { return depth_report(p).max_gate_width; })
        .def_property_readonly("gate_supports",
                               [](const CircuitPlan &p) {
                                   std::vector<std::vector<int>> out;
                                   for (const auto &g : p.gates) out.push_back(g.support());
                                   return out;
                               })
        .def("merged", &merge_gates)
        .def("to_json", &circuit_to_json)
        .def_static("from_json", &circuit_from_json)
        .def("save", [](const CircuitPlan &p, const std::string &path) { export_circuit(p, path); })
        .def_static("load", &import_circuit);

    m.def("tt_to_circuit", &tt_to_circuit, py::arg("tt"), py::arg("chi_cap") = 8);
    m.def(
        "compile",
        [](const TensorTrain &tt, std::size_t chi_cap, double round_tol, bool merge) {
            CompileConfig c;
            c.chi_cap = chi_cap;
            c.round_tol = round_tol;
            c.merge = merge;
            return compile_tt(tt, c);
        },
        py::arg("tt"), py::arg("chi_cap") = 8, py::arg("round_tol") = 1e-14, py::arg("merge") = false,
        "Rounds, pads and compiles a tensor train into a gate sequence.");
    m.def(
        "grover_rudolph_baseline",
        [](const std::vector<double> &probs) { return grover_rudolph_baseline(probs); }, py::arg("probs"));

    m.def("simulate", [](const CircuitPlan &p) { return amps_to_array(run(p).amps); }, py::arg("plan"),
          "Amplitudes of the prepared state, qubit 1 most significant.");
    m.def(
        "sample",
        [](const CircuitPlan &p, std::uint64_t shots, std::uint64_t seed) {
            StateVector sv = run(p);
            std::map<std::string, std::uint64_t> out;
            for (const auto &[x, n] : sample(sv, shots, seed)) out[bitstring(x, sv.num_qubits)] = n;
            return out;
        },
        py::arg("plan"), py::arg("shots"), py::arg("seed") = 1);

    m.def(
        "ks_distance", [](const std::vector<double> &f, const std::vector<double> &g) { return ks_distance(f, g); },
        py::arg("f"), py::arg("g"));
    m.def(
        "kl_divergence",
        [](const std::vector<double> &p, const std::vector<double> &q, double floor) {
            return kl_divergence(p, q, floor);
        },
        py::arg("p"), py::arg("q"), py::arg("floor") = kDefaultKlFloor);
    m.def(
        "fidelity",
        [](const py::array_t<std::complex<double>, py::array::forcecast> &a,
           const py::array_t<std::complex<double>, py::array::forcecast> &b) {
            return fidelity(as_state(a), array_to_amps(b));
        },
        py::arg("a"), py::arg("b"));

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def_static("parse", &parse_config, py::arg("text"))
        .def_static("load", &load_config, py::arg("path"))
        .def("to_json", &serialize_config)
        .def_readwrite("seed", &ExperimentConfig::seed)
        .def("__eq__", [](const ExperimentConfig &a, const ExperimentConfig &b) { return a == b; });

    m.def(
        "fit",
        [](const py::object &cfg, int qubits_per_dim, std::uint64_t seed) {
            FitResult fit = fit_point(as_config(cfg), qubits_per_dim, seed);
            const auto p = fit.target.probabilities();
            py::array_t<double> probs(py::ssize_t(p.size()));
            std::copy(p.begin(), p.end(), probs.mutable_data());
            return py::make_tuple(std::move(fit.cross.tt), probs, cross_report_dict(fit.cross.report));
        },
        py::arg("config"), py::arg("qubits_per_dim"), py::arg("seed") = 1,
        "Discretizes the configured distribution and fits its amplitudes. Returns (tt, probabilities, report).");
    m.def(
        "run_pipeline",
        [](const py::object &cfg, bool timing) {
            return report_rows(run_pipeline(as_config(cfg), PipelineOptions{.timing = timing}));
        },
        py::arg("config"), py::arg("timing") = false, "Runs the configured sweep and returns one dict per point.");
    m.def(
        "format_report",
        [](const py::object &cfg, const std::string &format, bool timing) {
            return format_report(run_pipeline(as_config(cfg), PipelineOptions{.timing = timing}),
                                 report_format_from_string(format));
        },
        py::arg("config"), py::arg("format") = "csv", py::arg("timing") = false);
}
