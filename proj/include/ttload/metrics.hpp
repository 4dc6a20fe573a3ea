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

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "ttload/statevector.hpp"

namespace ttload {

struct MetricReport {
    std::optional<double> ks;
    std::optional<double> kl;
    std::optional<double> fidelity;
    double l2_amplitude_error = 0.0;
    std::map<std::string, std::string> metadata;
};

inline constexpr double kDefaultKlFloor = 1e-300;

/// sup |F - G| over two CDF vectors of equal length.
double ks_distance(std::span<const double> f, std::span<const double> g);

/// sum_x P ln(P / max(Q, floor)); terms with P = 0 contribute nothing.
double kl_divergence(std::span<const double> p, std::span<const double> q, double floor = kDefaultKlFloor);

/// |<target|sv>| for normalized vectors.
double fidelity(const StateVector &sv, const Eigen::VectorXcd &target);
double fidelity(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b);

}  // namespace ttload
