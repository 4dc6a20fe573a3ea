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

// Command line front end: fit, compile, simulate, bench, export, import-check.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "ttload/config.hpp"
#include "ttload/errors.hpp"
#include "ttload/io.hpp"
#include "ttload/pipeline.hpp"
#include "ttload/statevector.hpp"

namespace {

using namespace ttload;
using nlohmann::json;

struct Args {
    std::string config;
    std::string out;
    std::string format = "csv";
    std::optional<std::uint64_t> seed;
    bool no_timing = false;
    std::string circuit;
    std::string tt;
    std::optional<std::uint64_t> shots;
};

ExperimentConfig load(const Args &a) {
    ExperimentConfig cfg = a.config.empty() ? ExperimentConfig{} : load_config(a.config);
    if (a.seed) cfg.seed = *a.seed;
    if (a.shots) cfg.simulate.shots = *a.shots;
    cfg.validate();
    return cfg;
}

void emit(const std::string &out, const std::string &text) {
    if (out.empty() || out == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
    } else {
        write_file(out, text);
    }
}

json cross_summary(const CrossReport &r, const TensorTrain &tt) {
    return {{"sweeps_run", r.sweeps_run},
            {"function_evaluations", r.function_evaluations},
            {"validation_evaluations", r.validation_evaluations},
            {"evaluations_per_sweep", r.evaluations_per_sweep},
            {"error_history", r.error_history},
            {"final_validation_error", r.final_validation_error},
            {"converged", r.converged},
            {"ranks", tt.ranks()}};
}

FitResult fit(const ExperimentConfig &cfg) {
    return fit_point(cfg, cfg.grid.qubits_per_dim, point_seed(cfg.seed, 0));
}

int cmd_fit(const Args &a) {
    ExperimentConfig cfg = load(a);
    FitResult f = fit(cfg);
    if (!a.out.empty()) save_tt(f.cross.tt, a.out);
    std::cout << cross_summary(f.cross.report, f.cross.tt).dump(2) << '\n';
    return 0;
}

CircuitPlan compile_from(const Args &a, const ExperimentConfig &cfg) {
    if (!a.tt.empty()) return compile_tt(load_tt(a.tt), cfg.compile);
    return compile_tt(fit(cfg).cross.tt, cfg.compile);
}

int cmd_compile(const Args &a) {
    ExperimentConfig cfg = load(a);
    CircuitPlan plan = compile_from(a, cfg);
    DepthReport d = depth_report(plan);
    if (!a.out.empty()) export_circuit(plan, a.out);
    std::cout << json{{"num_qubits", plan.num_qubits},
                      {"normalizer", plan.normalizer},
                      {"gate_count", d.gate_count},
                      {"depth", d.depth},
                      {"max_gate_width", d.max_gate_width},
                      {"two_level_decomposed_depth_estimate", d.two_level_decomposed_depth_estimate}}
                     .dump(2)
              << '\n';
    return 0;
}

int cmd_export(const Args &a) {
    if (a.out.empty()) throw ConfigError("export: --out is required");
    ExperimentConfig cfg = load(a);
    export_circuit(compile_from(a, cfg), a.out);
    return 0;
}

int cmd_simulate(const Args &a) {
    if (a.circuit.empty()) throw ConfigError("simulate: --circuit is required");
    ExperimentConfig cfg = load(a);
    StateVector sv = run(import_circuit(a.circuit));
    Histogram h = sample(sv, cfg.simulate.shots, cfg.seed);
    std::string text;
    if (a.format == "json") {
        json counts = json::object();
        for (const auto &[x, n] : h) counts[bitstring(x, sv.num_qubits)] = n;
        text = json{{"num_qubits", sv.num_qubits}, {"shots", cfg.simulate.shots}, {"counts", counts}}.dump(2);
    } else {
        text = "bitstring,count\n";
        for (const auto &[x, n] : h) text += bitstring(x, sv.num_qubits) + "," + std::to_string(n) + "\n";
    }
    emit(a.out, text);
    return 0;
}

int cmd_bench(const Args &a) {
    ExperimentConfig cfg = load(a);
    PipelineOptions opts;
    opts.timing = !a.no_timing;
    ExperimentReport rep = run_pipeline(cfg, opts);
    const std::string format = a.format.empty() ? cfg.output.format : a.format;
    const std::string out = a.out.empty() ? cfg.output.path : a.out;
    emit(out, format_report(rep, report_format_from_string(format)));
    return 0;
}

int cmd_import_check(const Args &a) {
    if (a.circuit.empty()) throw ConfigError("import-check: --circuit is required");
    CircuitPlan plan = import_circuit(a.circuit);
    validate_plan(plan);
    json out = {{"num_qubits", plan.num_qubits}, {"gate_count", plan.total_gate_count()}, {"depth", plan.depth()}};
    StateVector sv = run(plan);
    out["state_norm"] = sv.norm();
    if (!a.tt.empty()) {
        TensorTrain tt = load_tt(a.tt);
        DenseTensor dense = tt_to_dense(tt, std::size_t{1} << kMaxSimulatedQubits);
        Eigen::VectorXcd target(Eigen::Index(dense.size()));
        for (std::size_t i = 0; i < dense.size(); ++i) target[Eigen::Index(i)] = dense.data()[i] / plan.normalizer;
        out["fidelity"] = fidelity(sv.amps, target);
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

int exit_code_for(const std::exception &e) {
    if (dynamic_cast<const ConfigError *>(&e)) return 2;
    if (dynamic_cast<const IoError *>(&e)) return 4;
    if (dynamic_cast<const NumericError *>(&e)) return 3;
    if (dynamic_cast<const std::invalid_argument *>(&e)) return 2;
    return 3;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"ttload: tensor-train state preparation toolkit"};
    app.require_subcommand(1);
    Args a;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--config", a.config, "Experiment config (JSON)");
        sub->add_option("--out", a.out, "Output path");
        sub->add_option("--seed", a.seed, "Master seed override");
    };

    auto *fit_cmd = app.add_subcommand("fit", "Learn a tensor train of the configured distribution");
    add_common(fit_cmd);

    auto *compile_cmd = app.add_subcommand("compile", "Compile a tensor train into a gate sequence");
    add_common(compile_cmd);
    compile_cmd->add_option("--tt", a.tt, "Tensor train JSON (default: fit from config)");

    auto *sim_cmd = app.add_subcommand("simulate", "Sample an exported circuit");
    add_common(sim_cmd);
    sim_cmd->add_option("--circuit", a.circuit, "Circuit JSON")->required();
    sim_cmd->add_option("--shots", a.shots, "Number of samples");
    sim_cmd->add_option("--format", a.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto *bench_cmd = app.add_subcommand("bench", "Run the configured sweep and emit a report");
    add_common(bench_cmd);
    bench_cmd->add_option("--format", a.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    bench_cmd->add_flag("--no-timing", a.no_timing, "Omit wall times for byte-identical reports");

    auto *export_cmd = app.add_subcommand("export", "Fit, compile and write circuit JSON");
    add_common(export_cmd);
    export_cmd->add_option("--tt", a.tt, "Tensor train JSON (default: fit from config)");

    auto *check_cmd = app.add_subcommand("import-check", "Validate and simulate a circuit JSON file");
    check_cmd->add_option("--circuit", a.circuit, "Circuit JSON")->required();
    check_cmd->add_option("--tt", a.tt, "Tensor train to compare against");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*fit_cmd) return cmd_fit(a);
        if (*compile_cmd) return cmd_compile(a);
        if (*sim_cmd) return cmd_simulate(a);
        if (*bench_cmd) {
            if (bench_cmd->count("--format") == 0) a.format.clear();
            return cmd_bench(a);
        }
        if (*export_cmd) return cmd_export(a);
        if (*check_cmd) return cmd_import_check(a);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
    return 0;
}
