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

#include "ttload/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ttload {

namespace {

constexpr double kInputTol = 1e-9;

void check_cdf(std::span<const double> f) {
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!std::isfinite(f[i]) || f[i] < -kInputTol) throw std::invalid_argument("ks_distance: invalid CDF value");
        if (i && f[i] < f[i - 1] - kInputTol) throw std::invalid_argument("ks_distance: CDF is decreasing");
    }
    if (std::abs(f.back() - 1.0) > kInputTol) throw std::invalid_argument("ks_distance: CDF does not end at 1");
}

void check_probabilities(std::span<const double> p) {
    double total = 0.0;
    for (double v : p) {
        if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("kl_divergence: invalid probability");
        total += v;
    }
    if (std::abs(total - 1.0) > kInputTol) throw std::invalid_argument("kl_divergence: probabilities do not sum to 1");
}

}  // namespace

double ks_distance(std::span<const double> f, std::span<const double> g) {
    if (f.size() != g.size() || f.empty()) throw std::invalid_argument("ks_distance: length mismatch");
    check_cdf(f);
    check_cdf(g);
    double d = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) d = std::max(d, std::abs(f[i] - g[i]));
    return std::min(d, 1.0);
}

double kl_divergence(std::span<const double> p, std::span<const double> q, double floor) {
    if (p.size() != q.size() || p.empty()) throw std::invalid_argument("kl_divergence: length mismatch");
    if (!(floor > 0.0)) throw std::invalid_argument("kl_divergence: floor must be positive");
    check_probabilities(p);
    check_probabilities(q);
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) continue;
        sum += p[i] * std::log(p[i] / std::max(q[i], floor));
    }
    return sum;
}

double fidelity(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b) {
    if (a.size() != b.size()) throw std::invalid_argument("fidelity: length mismatch");
    return std::min(1.0, std::abs(b.dot(a)));
}

double fidelity(const StateVector &sv, const Eigen::VectorXcd &target) { return fidelity(sv.amps, target); }

}  // namespace ttload
