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

#include "ttload/quantizer.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>

#include "ttload/bits.hpp"
#include "ttload/errors.hpp"

namespace ttload {

GridSpec::GridSpec(std::vector<DimensionGrid> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw ConfigError("grid: at least one dimension required");
    for (std::size_t v = 0; v < dims_.size(); ++v) {
        const auto &g = dims_[v];
        if (!(g.upper > g.lower)) throw ConfigError("grid: upper bound must exceed lower bound");
        if (g.qubits < 1 || g.qubits > 62) throw ConfigError("grid: qubits per dimension must be in [1, 62]");
        if (g.qubits != dims_.front().qubits) {
            throw ConfigError("grid: all dimensions must use the same number of qubits");
        }
    }
}

double GridSpec::point(std::size_t v, std::uint64_t i) const {
    const auto &g = dims_.at(v);
    const double steps = double(points_per_dim() - 1);
    return g.lower + double(i) * (g.upper - g.lower) / steps;
}

DistributionSpec::DistributionSpec(Kind kind) : kind_(std::move(kind)) {}

DistributionSpec DistributionSpec::lognormal_1d(double mu, double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(mu)) throw ConfigError("lognormal_1d: sigma must be positive");
    return DistributionSpec(LogNormal1D{mu, sigma});
}

DistributionSpec DistributionSpec::lognormal_nd(Eigen::VectorXd mu, Eigen::MatrixXd cov) {
    if (mu.size() < 1 || cov.rows() != mu.size() || cov.cols() != mu.size()) {
        throw ConfigError("lognormal_nd: mean and covariance dimensions disagree");
    }
    if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, cov.cwiseAbs().maxCoeff())) {
        throw ConfigError("lognormal_nd: covariance is not symmetric");
    }
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) throw ConfigError("lognormal_nd: covariance is not positive definite");
    DistributionSpec spec(LogNormalND{std::move(mu), std::move(cov)});
    spec.chol_lower_ = llt.matrixL();
    return spec;
}

DistributionSpec DistributionSpec::lognormal_equicorrelated(std::size_t dims, double sigma, double correlation) {
    Eigen::MatrixXd cov = Eigen::MatrixXd::Constant(Eigen::Index(dims), Eigen::Index(dims), correlation);
    cov.diagonal().setOnes();
    cov *= sigma * sigma;
    return lognormal_nd(Eigen::VectorXd::Zero(Eigen::Index(dims)), std::move(cov));
}

DistributionSpec DistributionSpec::custom(std::size_t dims, std::function<double(std::span<const double>)> density) {
    if (dims < 1 || !density) throw ConfigError("custom density: need a callback and at least one dimension");
    return DistributionSpec(CustomDensity{dims, std::move(density)});
}

std::size_t DistributionSpec::dims() const {
    return std::visit(
        [](const auto &k) -> std::size_t {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, LogNormal1D>) return 1;
            else if constexpr (std::is_same_v<T, LogNormalND>) return std::size_t(k.mu.size());
            else return k.dims;
        },
        kind_);
}

std::string DistributionSpec::kind_name() const {
    switch (kind_.index()) {
        case 0: return "lognormal_1d";
        case 1: return "lognormal_nd";
        default: return "custom";
    }
}

double DistributionSpec::density(std::span<const double> x) const {
    if (x.size() != dims()) throw std::invalid_argument("density: point dimension mismatch");
    if (const auto *ln = std::get_if<LogNormal1D>(&kind_)) {
        if (x[0] <= 0.0) return 0.0;
        const double z = (std::log(x[0]) - ln->mu) / ln->sigma;
        return std::exp(-0.5 * z * z) / (x[0] * ln->sigma * std::sqrt(2.0 * std::numbers::pi));
    }
    if (const auto *ln = std::get_if<LogNormalND>(&kind_)) {
        const auto n = ln->mu.size();
        Eigen::VectorXd y(n);
        double jacobian = 1.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (x[std::size_t(i)] <= 0.0) return 0.0;
            y[i] = std::log(x[std::size_t(i)]) - ln->mu[i];
            jacobian *= x[std::size_t(i)];
        }
        const Eigen::VectorXd z = chol_lower_.triangularView<Eigen::Lower>().solve(y);
        const double log_det = 2.0 * chol_lower_.diagonal().array().log().sum();
        const double log_norm = 0.5 * (double(n) * std::log(2.0 * std::numbers::pi) + log_det);
        return std::exp(-0.5 * z.squaredNorm() - log_norm) / jacobian;
    }
    return std::get<CustomDensity>(kind_).density(x);
}

std::vector<DimensionGrid> DistributionSpec::quantile_grid(int qubits, double lo, double hi) const {
    if (!(lo > 0.0 && lo < hi && hi < 1.0)) throw ConfigError("quantile range must satisfy 0 < lo < hi < 1");
    const boost::math::normal standard;
    const double zlo = boost::math::quantile(standard, lo);
    const double zhi = boost::math::quantile(standard, hi);
    std::vector<DimensionGrid> out;
    if (const auto *ln = std::get_if<LogNormal1D>(&kind_)) {
        out.push_back({std::exp(ln->mu + ln->sigma * zlo), std::exp(ln->mu + ln->sigma * zhi), qubits});
    } else if (const auto *ln = std::get_if<LogNormalND>(&kind_)) {
        for (Eigen::Index i = 0; i < ln->mu.size(); ++i) {
            const double s = std::sqrt(ln->cov(i, i));
            out.push_back({std::exp(ln->mu[i] + s * zlo), std::exp(ln->mu[i] + s * zhi), qubits});
        }
    } else {
        throw ConfigError("quantile bounds are only defined for log-normal distributions");
    }
    return out;
}

std::string to_string(OrderingScheme s) {
    switch (s) {
        case OrderingScheme::sequential: return "sequential";
        case OrderingScheme::mirrored: return "mirrored";
        case OrderingScheme::interleaved: return "interleaved";
    }
    return "?";
}

OrderingScheme ordering_scheme_from_string(const std::string &s) {
    if (s == "sequential") return OrderingScheme::sequential;
    if (s == "mirrored") return OrderingScheme::mirrored;
    if (s == "interleaved") return OrderingScheme::interleaved;
    throw ConfigError("unknown ordering scheme '" + s + "'");
}

OrderingMap::OrderingMap(OrderingScheme scheme, int dims, int qubits_per_dim, int reversed_variable)
    : scheme_(scheme), dims_(dims), q_(qubits_per_dim), reversed_(reversed_variable) {
    if (dims < 1 || qubits_per_dim < 1) throw ConfigError("ordering: dims and qubits must be positive");
    if (dims * qubits_per_dim > 63) throw ConfigError("ordering: more than 63 bits in total");
    if (scheme == OrderingScheme::mirrored) {
        if (dims != 2) throw ConfigError("ordering: mirrored scheme requires exactly 2 dimensions");
        if (reversed_variable != 0 && reversed_variable != 1) {
            throw ConfigError("ordering: reversed variable must be 0 or 1");
        }
    }
    const int total = dims * qubits_per_dim;
    slots_.resize(std::size_t(total));
    for (int t = 0; t < total; ++t) {
        switch (scheme) {
            case OrderingScheme::sequential:
                slots_[std::size_t(t)] = {t / q_, t % q_};
                break;
            case OrderingScheme::interleaved:
                slots_[std::size_t(t)] = {t % dims_, t / dims_};
                break;
            case OrderingScheme::mirrored: {
                // Reversed variable first, least significant bit first, so the
                // two most significant bits meet in the middle.
                const int first = reversed_;
                const int second = 1 - reversed_;
                slots_[std::size_t(t)] = t < q_ ? Slot{first, q_ - 1 - t} : Slot{second, t - q_};
                break;
            }
        }
    }
    positions_.assign(std::size_t(total), -1);
    for (int t = 0; t < total; ++t) {
        const auto s = slots_[std::size_t(t)];
        positions_[std::size_t(s.variable * q_ + s.significance)] = t;
    }
}

int OrderingMap::position(int variable, int significance) const {
    if (variable < 0 || variable >= dims_ || significance < 0 || significance >= q_) {
        throw std::out_of_range("ordering: (variable, significance) out of range");
    }
    return positions_[std::size_t(variable * q_ + significance)];
}

std::vector<int> OrderingMap::bits_from_indices(std::span<const std::uint64_t> indices) const {
    if (indices.size() != std::size_t(dims_)) throw std::invalid_argument("ordering: wrong number of indices");
    std::vector<int> bits(static_cast<std::size_t>(total_bits()));
    for (int t = 0; t < total_bits(); ++t) {
        const auto s = slots_[std::size_t(t)];
        const std::uint64_t i = indices[std::size_t(s.variable)];
        if (i >> q_) throw std::out_of_range("ordering: grid index out of range");
        bits[std::size_t(t)] = int((i >> (q_ - 1 - s.significance)) & 1u);
    }
    return bits;
}

std::vector<std::uint64_t> OrderingMap::indices_from_bits(std::span<const int> bits) const {
    if (bits.size() != std::size_t(total_bits())) throw std::out_of_range("ordering: wrong bitstring length");
    std::vector<std::uint64_t> indices(std::size_t(dims_), 0);
    for (int t = 0; t < total_bits(); ++t) {
        const int b = bits[std::size_t(t)];
        if (b != 0 && b != 1) throw std::out_of_range("ordering: bit is not 0 or 1");
        const auto s = slots_[std::size_t(t)];
        indices[std::size_t(s.variable)] |= std::uint64_t(b) << (q_ - 1 - s.significance);
    }
    return indices;
}

OrderingMap ordering_bitmap(OrderingScheme scheme, int dims, int qubits_per_dim, int reversed_variable) {
    return OrderingMap(scheme, dims, qubits_per_dim, reversed_variable);
}

double DiscreteDistribution::State::weight(std::span<const std::uint64_t> var_indices) const {
    std::vector<double> x(var_indices.size());
    for (std::size_t v = 0; v < x.size(); ++v) x[v] = grid.point(v, var_indices[v]);
    const double w = dist.density(x);
    if (!std::isfinite(w) || w < 0.0) {
        std::vector<int> idx(var_indices.begin(), var_indices.end());
        throw InputFunctionError(std::move(idx), "density must be finite and nonnegative");
    }
    return w;
}

DiscreteDistribution::DiscreteDistribution(DistributionSpec dist, GridSpec grid, OrderingMap ordering) {
    if (dist.dims() != grid.dims() || int(grid.dims()) != ordering.dims() ||
        grid.qubits_per_dim() != ordering.qubits_per_dim()) {
        throw ConfigError("discretize: distribution, grid and ordering dimensions disagree");
    }
    auto state = std::make_shared<State>(State{std::move(dist), std::move(grid), std::move(ordering)});
    if (state->grid.total_qubits() <= kMaxEnumerableQubits) {
        const std::size_t dims = state->grid.dims();
        const std::uint64_t per = state->grid.points_per_dim();
        std::vector<std::uint64_t> idx(dims, 0);
        // Compensated sum keeps the 1e-12 normalization at 2^26 terms.
        double sum = 0.0, carry = 0.0;
        const std::uint64_t total = std::uint64_t{1} << state->grid.total_qubits();
        for (std::uint64_t flat = 0; flat < total; ++flat) {
            const double y = state->weight(idx) - carry;
            const double t = sum + y;
            carry = (t - sum) - y;
            sum = t;
            for (std::size_t v = dims; v-- > 0;) {
                if (++idx[v] < per) break;
                idx[v] = 0;
            }
        }
        if (!(sum > 0.0)) throw InputFunctionError({}, "density vanishes on the whole grid");
        state->normalizer = sum;
        state->normalized = true;
    }
    state_ = std::move(state);
}

double DiscreteDistribution::prob_at(std::span<const std::uint64_t> var_indices) const {
    return state_->weight(var_indices) / state_->normalizer;
}

double DiscreteDistribution::prob(std::span<const int> bits) const {
    const auto idx = state_->ordering.indices_from_bits(bits);
    return prob_at(idx);
}

double DiscreteDistribution::amplitude(std::span<const int> bits) const { return std::sqrt(prob(bits)); }

TensorFunction DiscreteDistribution::amplitude_function() const {
    return [state = state_](std::span<const int> bits) {
        const auto idx = state->ordering.indices_from_bits(bits);
        return std::sqrt(state->weight(idx) / state->normalizer);
    };
}

std::vector<double> DiscreteDistribution::probabilities() const {
    const int d = total_qubits();
    if (d > kMaxEnumerableQubits) {
        throw CapacityError("discrete distribution over " + std::to_string(d) + " qubits is too large to enumerate");
    }
    const std::uint64_t total = std::uint64_t{1} << d;
    const auto &ord = state_->ordering;
    const int q = ord.qubits_per_dim();
    std::vector<double> out(total);
    std::vector<std::uint64_t> idx(std::size_t(ord.dims()));
    for (std::uint64_t x = 0; x < total; ++x) {
        std::fill(idx.begin(), idx.end(), 0);
        for (int t = 0; t < d; ++t) {
            const std::uint64_t bit = (x >> qubit_bit_position(t + 1, d)) & 1u;
            const auto s = ord.slot(t);
            idx[std::size_t(s.variable)] |= bit << (q - 1 - s.significance);
        }
        out[x] = prob_at(idx);
    }
    return out;
}

DiscreteDistribution discretize(const DistributionSpec &dist, const GridSpec &grid, const OrderingMap &ordering) {
    return DiscreteDistribution(dist, grid, ordering);
}

std::vector<double> cumulative(std::span<const double> probs) {
    std::vector<double> out(probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) out[i] = (acc += probs[i]);
    return out;
}

std::vector<double> cdf_1d(const DiscreteDistribution &dd) {
    if (dd.grid().dims() != 1) throw std::invalid_argument("cdf_1d: distribution is multivariate");
    const std::uint64_t n = dd.grid().points_per_dim();
    std::vector<double> p(n);
    for (std::uint64_t i = 0; i < n; ++i) p[i] = dd.prob_at(std::span<const std::uint64_t>(&i, 1));
    return cumulative(p);
}

}  // namespace ttload
