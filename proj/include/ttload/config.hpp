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
#include <utility>
#include <vector>

#include "ttload/cross.hpp"
#include "ttload/quantizer.hpp"

namespace ttload {

struct DistributionConfig {
    /// "lognormal_1d" or "lognormal_nd".
    std::string kind = "lognormal_1d";
    std::size_t dims = 1;
    double mu = 0.0;
    double sigma = 0.25;
    /// Equal pairwise correlation of the log variables (lognormal_nd).
    double correlation = 0.3;
    /// Explicit mean vector / covariance; override mu, sigma and correlation.
    std::optional<std::vector<double>> mean;
    std::optional<std::vector<std::vector<double>>> covariance;

    bool operator==(const DistributionConfig &) const = default;
};

struct GridConfig {
    int qubits_per_dim = 8;
    /// Per-dimension [lower, upper]; defaults to marginal quantile bounds.
    std::optional<std::vector<std::pair<double, double>>> bounds;
    double quantile_lo = 0.0005;
    double quantile_hi = 0.9995;

    bool operator==(const GridConfig &) const = default;
};

struct OrderingConfig {
    OrderingScheme scheme = OrderingScheme::sequential;
    int reversed_variable = 0;

    bool operator==(const OrderingConfig &) const = default;
};

struct CompileConfig {
    std::size_t chi_cap = 8;
    /// Relative tolerance of the rounding pass applied before compilation.
    double round_tol = 1e-14;
    bool merge = false;
    bool baseline = false;

    bool operator==(const CompileConfig &) const = default;
};

struct SimulateConfig {
    std::uint64_t shots = 10000;

    bool operator==(const SimulateConfig &) const = default;
};

struct MetricsConfig {
    /// Only "natural" is supported.
    std::string kl_log = "natural";
    double kl_floor = 1e-300;
    /// KS / KL / fidelity are computed when the total qubit count is at most this.
    int dense_limit = 22;

    bool operator==(const MetricsConfig &) const = default;
};

struct SweepConfig {
    /// Qubits per dimension for each sweep point; empty means grid.qubits_per_dim.
    std::vector<int> qubits;
    std::size_t repeats = 5;

    bool operator==(const SweepConfig &) const = default;
};

struct OutputConfig {
    std::string path;
    std::string format = "csv";

    bool operator==(const OutputConfig &) const = default;
};

struct ExperimentConfig {
    std::uint64_t seed = 1;
    DistributionConfig distribution;
    GridConfig grid;
    OrderingConfig ordering;
    CrossConfig cross;
    CompileConfig compile;
    SimulateConfig simulate;
    MetricsConfig metrics;
    SweepConfig sweep;
    OutputConfig output;

    bool operator==(const ExperimentConfig &) const = default;

    std::vector<int> sweep_points() const;
    /// Throws ConfigError on inconsistent settings.
    void validate() const;
    DistributionSpec distribution_spec() const;
    GridSpec grid_spec(int qubits_per_dim) const;
    OrderingMap ordering_map(int qubits_per_dim) const;
};

/// Parses a JSON experiment document. Unknown keys are reported together in
/// one ConfigError; missing keys take their defaults.
ExperimentConfig parse_config(const std::string &text);
std::string serialize_config(const ExperimentConfig &cfg);
ExperimentConfig load_config(const std::string &path);

}  // namespace ttload
