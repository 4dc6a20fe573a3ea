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

#include "ttload/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <exception>

#include "ttload/errors.hpp"
#include "ttload/rng.hpp"

namespace ttload {

const std::vector<std::string> &report_columns() {
    static const std::vector<std::string> cols = {
        "d_total",    "qubits_per_dim",      "dims",
        "scheme",     "chi",                 "ks",
        "kl",         "fidelity",            "gate_count",
        "depth",      "baseline_gate_count", "function_evaluations",
        "wall_time_ms", "seed",              "validation_error",
        "error"};
    return cols;
}

FitResult fit_point(const ExperimentConfig &cfg, int qubits_per_dim, std::uint64_t seed) {
    DiscreteDistribution target =
        discretize(cfg.distribution_spec(), cfg.grid_spec(qubits_per_dim), cfg.ordering_map(qubits_per_dim));
    CrossConfig cc = cfg.cross;
    cc.rng_seed = seed;
    std::vector<std::size_t> shape(std::size_t(target.total_qubits()), 2);
    CrossResult cross = tt_cross(target.amplitude_function(), shape, cc);
    return {std::move(target), std::move(cross)};
}

CircuitPlan compile_tt(const TensorTrain &tt, const CompileConfig &opts) {
    TensorTrain rounded = tt_round(tt, opts.round_tol, opts.chi_cap);
    CircuitPlan plan = tt_to_circuit(pad_ranks_pow2(rounded), opts.chi_cap);
    return opts.merge ? merge_gates(plan) : plan;
}

MetricReport measure(const StateVector &sv, const DiscreteDistribution &target, const MetricsConfig &opts) {
    if (target.total_qubits() != sv.num_qubits) throw std::invalid_argument("measure: qubit count mismatch");
    if (!target.normalized()) throw CapacityError("measure: target distribution is not enumerable");
    MetricReport rep;
    std::vector<double> p = target.probabilities();
    std::vector<double> q(p.size());
    Eigen::VectorXcd amps(Eigen::Index(p.size()));
    for (std::size_t i = 0; i < p.size(); ++i) {
        q[i] = std::norm(sv.amps[Eigen::Index(i)]);
        amps[Eigen::Index(i)] = std::sqrt(p[i]);
    }
    // The simulated state is normalized to rounding error only.
    double qs = 0.0;
    for (double v : q) qs += v;
    for (double &v : q) v /= qs;
    rep.kl = std::max(0.0, kl_divergence(p, q, opts.kl_floor));
    rep.fidelity = std::min(1.0, fidelity(sv, amps));
    rep.l2_amplitude_error = (sv.amps - amps).norm();
    if (target.grid().dims() == 1) {
        std::vector<double> f = cumulative(p), g = cumulative(q);
        rep.ks = ks_distance(f, g);
    }
    rep.metadata["distribution"] = target.distribution().kind_name();
    rep.metadata["scheme"] = to_string(target.ordering().scheme());
    rep.metadata["qubits"] = std::to_string(target.total_qubits());
    return rep;
}

std::uint64_t point_seed(std::uint64_t master, std::size_t index) { return derive_seed(master, index); }

namespace {

void run_point(const ExperimentConfig &cfg, int q, const PipelineOptions &opts, ReportRow &row) {
    using clock = std::chrono::steady_clock;
    const std::size_t repeats = opts.timing ? cfg.sweep.repeats : 1;
    double total_ms = 0.0;
    std::optional<FitResult> fit;
    for (std::size_t r = 0; r < repeats; ++r) {
        auto t0 = clock::now();
        fit.emplace(fit_point(cfg, q, row.seed));
        total_ms += std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    }
    if (opts.timing) row.wall_time_ms = total_ms / double(repeats);
    row.function_evaluations = fit->cross.report.function_evaluations;
    row.validation_error = fit->cross.report.final_validation_error;

    CircuitPlan plan = compile_tt(fit->cross.tt, cfg.compile);
    row.gate_count = plan.total_gate_count();
    row.depth = plan.depth();

    if (row.d_total <= cfg.metrics.dense_limit) {
        MetricReport m = measure(run(plan), fit->target, cfg.metrics);
        row.ks = m.ks;
        row.kl = m.kl;
        row.fidelity = m.fidelity;
    }
    if (cfg.compile.baseline) {
        if (row.d_total > kMaxEnumerableQubits) throw CapacityError("baseline: grid too large to enumerate");
        row.baseline_gate_count = grover_rudolph_baseline(fit->target.probabilities()).total_gate_count();
    }
}

}  // namespace

ExperimentReport run_pipeline(const ExperimentConfig &cfg, const PipelineOptions &opts) {
    cfg.validate();
    ExperimentReport report;
    const std::vector<int> points = cfg.sweep_points();
    for (std::size_t i = 0; i < points.size(); ++i) {
        ReportRow row;
        row.qubits_per_dim = points[i];
        row.dims = cfg.distribution.dims;
        row.d_total = points[i] * int(row.dims);
        row.scheme = to_string(cfg.ordering.scheme);
        row.chi = cfg.cross.max_rank;
        row.seed = point_seed(cfg.seed, i);
        try {
            run_point(cfg, points[i], opts, row);
        } catch (const std::exception &e) {
            row.error = e.what();
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace ttload
