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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "ttload/cross.hpp"

namespace ttload {

/// Equispaced points x_i = lower + i (upper - lower) / (2^q - 1), i < 2^q.
struct DimensionGrid {
    double lower = 0.0;
    double upper = 1.0;
    int qubits = 1;
};

class GridSpec {
   public:
    /// All dimensions must share one qubit count; throws ConfigError otherwise.
    explicit GridSpec(std::vector<DimensionGrid> dims);

    std::size_t dims() const noexcept { return dims_.size(); }
    int qubits_per_dim() const noexcept { return dims_.front().qubits; }
    int total_qubits() const noexcept { return int(dims_.size()) * qubits_per_dim(); }
    std::uint64_t points_per_dim() const noexcept { return std::uint64_t{1} << qubits_per_dim(); }
    const DimensionGrid &dim(std::size_t v) const { return dims_.at(v); }
    double point(std::size_t v, std::uint64_t i) const;

   private:
    std::vector<DimensionGrid> dims_;
};

struct LogNormal1D {
    double mu = 0.0;
    double sigma = 0.25;
};

struct LogNormalND {
    Eigen::VectorXd mu;
    Eigen::MatrixXd cov;
};

struct CustomDensity {
    std::size_t dims = 1;
    std::function<double(std::span<const double>)> density;
};

class DistributionSpec {
   public:
    using Kind = std::variant<LogNormal1D, LogNormalND, CustomDensity>;

    static DistributionSpec lognormal_1d(double mu, double sigma);
    static DistributionSpec lognormal_nd(Eigen::VectorXd mu, Eigen::MatrixXd cov);
    /// Zero mean, marginal sigma, equal pairwise correlation.
    static DistributionSpec lognormal_equicorrelated(std::size_t dims, double sigma, double correlation);
    static DistributionSpec custom(std::size_t dims, std::function<double(std::span<const double>)> density);

    const Kind &kind() const noexcept { return kind_; }
    std::size_t dims() const;
    std::string kind_name() const;

    /// Density at x, up to a constant factor. Zero outside the support.
    double density(std::span<const double> x) const;

    /// Per-dimension bounds spanning the [lo, hi] marginal quantiles. Only for
    /// the log-normal kinds.
    std::vector<DimensionGrid> quantile_grid(int qubits, double lo = 0.0005, double hi = 0.9995) const;

   private:
    explicit DistributionSpec(Kind kind);

    Kind kind_;
    // Cached factorization for the multivariate case.
    Eigen::MatrixXd chol_lower_;
};

enum class OrderingScheme { sequential, mirrored, interleaved };

std::string to_string(OrderingScheme s);
OrderingScheme ordering_scheme_from_string(const std::string &s);

/// Bijection between bit positions 0..dims*q-1 (position t is TT core t and
/// circuit qubit t+1) and (variable, significance) pairs, significance 0
/// being the variable's most significant bit.
class OrderingMap {
   public:
    struct Slot {
        int variable;
        int significance;
    };

    OrderingMap(OrderingScheme scheme, int dims, int qubits_per_dim, int reversed_variable = 0);

    OrderingScheme scheme() const noexcept { return scheme_; }
    int dims() const noexcept { return dims_; }
    int qubits_per_dim() const noexcept { return q_; }
    int total_bits() const noexcept { return dims_ * q_; }
    int reversed_variable() const noexcept { return reversed_; }

    Slot slot(int position) const { return slots_.at(std::size_t(position)); }
    int position(int variable, int significance) const;

    std::vector<int> bits_from_indices(std::span<const std::uint64_t> indices) const;
    std::vector<std::uint64_t> indices_from_bits(std::span<const int> bits) const;

   private:
    OrderingScheme scheme_;
    int dims_, q_, reversed_;
    std::vector<Slot> slots_;
    std::vector<int> positions_;
};

/// Throws ConfigError for mirrored orderings with dims != 2.
OrderingMap ordering_bitmap(OrderingScheme scheme, int dims, int qubits_per_dim, int reversed_variable = 0);

/// Grids above this many qubits are never enumerated.
inline constexpr int kMaxEnumerableQubits = 26;

/// Discrete probability vector p(x_i) proportional to the density on the grid,
/// labelled by qubit bitstrings through an ordering.
class DiscreteDistribution {
   public:
    DiscreteDistribution(DistributionSpec dist, GridSpec grid, OrderingMap ordering);

    const DistributionSpec &distribution() const { return state_->dist; }
    const GridSpec &grid() const { return state_->grid; }
    const OrderingMap &ordering() const { return state_->ordering; }
    int total_qubits() const { return state_->grid.total_qubits(); }

    /// sum of the unnormalized weights. Exact when the grid is enumerable;
    /// otherwise 1 and normalized() is false.
    double normalizer() const { return state_->normalizer; }
    bool normalized() const { return state_->normalized; }

    double prob_at(std::span<const std::uint64_t> var_indices) const;
    double prob(std::span<const int> bits) const;
    double amplitude(std::span<const int> bits) const;

    /// sqrt(p) over bit multi-indices; suitable as a tt_cross target.
    TensorFunction amplitude_function() const;

    /// Dense probabilities in circuit basis order (qubit 1 most significant).
    std::vector<double> probabilities() const;

   private:
    struct State {
        DistributionSpec dist;
        GridSpec grid;
        OrderingMap ordering;
        double normalizer = 1.0;
        bool normalized = false;
        double weight(std::span<const std::uint64_t> var_indices) const;
    };
    std::shared_ptr<const State> state_;
};

DiscreteDistribution discretize(const DistributionSpec &dist, const GridSpec &grid, const OrderingMap &ordering);

/// Cumulative sums of a univariate discrete distribution in grid order.
std::vector<double> cdf_1d(const DiscreteDistribution &dd);
std::vector<double> cumulative(std::span<const double> probs);

}  // namespace ttload
