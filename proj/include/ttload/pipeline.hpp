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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ttload/circuit.hpp"
#include "ttload/config.hpp"
#include "ttload/cross.hpp"
#include "ttload/metrics.hpp"
#include "ttload/quantizer.hpp"
#include "ttload/statevector.hpp"

namespace ttload {

/// One sweep point of a benchmark run.
struct ReportRow {
    int d_total = 0;
    int qubits_per_dim = 0;
    std::size_t dims = 0;
    std::string scheme;
    std::size_t chi = 0;
    std::optional<double> ks;
    std::optional<double> kl;
    std::optional<double> fidelity;
    std::size_t gate_count = 0;
    std::size_t depth = 0;
    std::optional<std::size_t> baseline_gate_count;
    std::uint64_t function_evaluations = 0;
    /// Mean fit time over the configured repeats; empty with timing disabled.
    std::optional<double> wall_time_ms;
    std::uint64_t seed = 0;
    std::optional<double> validation_error;
    /// Message of the exception that aborted this point, empty on success.
    std::string error;

    bool operator==(const ReportRow &) const = default;
};

struct ExperimentReport {
    std::vector<ReportRow> rows;

    bool operator==(const ExperimentReport &) const = default;
};

/// Column names in emission order.
const std::vector<std::string> &report_columns();

struct FitResult {
    DiscreteDistribution target;
    CrossResult cross;
};

/// Discretizes the configured distribution at `qubits_per_dim` and learns its
/// amplitude function with cross settings taken from cfg.cross, seeded by `seed`.
FitResult fit_point(const ExperimentConfig &cfg, int qubits_per_dim, std::uint64_t seed);

/// Rounds to chi_cap, pads ranks to powers of two, compiles and optionally merges.
CircuitPlan compile_tt(const TensorTrain &tt, const CompileConfig &opts);

/// Dense comparison of a simulated state with the discrete target. KS is only
/// filled for univariate targets.
MetricReport measure(const StateVector &sv, const DiscreteDistribution &target, const MetricsConfig &opts);

struct PipelineOptions {
    bool timing = true;
};

/// Seed of sweep point `index` for master seed `master`.
std::uint64_t point_seed(std::uint64_t master, std::size_t index);

/// Runs every sweep point. Failures are recorded in the row's error field and
/// never abort the remaining points.
ExperimentReport run_pipeline(const ExperimentConfig &cfg, const PipelineOptions &opts = {});

}  // namespace ttload
