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
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ttload {

/// Small dense tensor in row-major order (last axis fastest). Used as an
/// oracle and for materializing modest tensor trains.
class DenseTensor {
   public:
    DenseTensor(std::vector<std::size_t> shape, std::vector<double> data);
    explicit DenseTensor(std::vector<std::size_t> shape);

    const std::vector<std::size_t> &shape() const noexcept { return shape_; }
    const std::vector<double> &data() const noexcept { return data_; }
    std::vector<double> &data() noexcept { return data_; }
    std::size_t size() const noexcept { return data_.size(); }

    std::size_t flat_index(std::span<const int> idx) const;
    double operator()(std::span<const int> idx) const { return data_[flat_index(idx)]; }

   private:
    std::vector<std::size_t> shape_;
    std::vector<double> data_;
};

/// One core G_k with axis order (left, mode, right), row-major.
class TTCore {
   public:
    TTCore(std::size_t left, std::size_t mode, std::size_t right, std::vector<double> data);
    TTCore(std::size_t left, std::size_t mode, std::size_t right);

    std::size_t left() const noexcept { return left_; }
    std::size_t mode() const noexcept { return mode_; }
    std::size_t right() const noexcept { return right_; }
    const std::vector<double> &data() const noexcept { return data_; }

    double operator()(std::size_t a, std::size_t i, std::size_t b) const {
        return data_[(a * mode_ + i) * right_ + b];
    }
    double &operator()(std::size_t a, std::size_t i, std::size_t b) {
        return data_[(a * mode_ + i) * right_ + b];
    }

    /// (left*mode) x right unfolding.
    Eigen::MatrixXd left_unfolding() const;
    /// left x (mode*right) unfolding.
    Eigen::MatrixXd right_unfolding() const;
    static TTCore from_left_unfolding(const Eigen::MatrixXd &m, std::size_t mode);
    static TTCore from_right_unfolding(const Eigen::MatrixXd &m, std::size_t mode);

    /// Matrix slice G(:, i, :).
    Eigen::MatrixXd slice(std::size_t i) const;

   private:
    std::size_t left_, mode_, right_;
    std::vector<double> data_;
};

class TensorTrain {
   public:
    /// Validates r_0 == r_d == 1 and rank chaining; throws std::invalid_argument.
    explicit TensorTrain(std::vector<TTCore> cores);

    std::size_t order() const noexcept { return cores_.size(); }
    const std::vector<TTCore> &cores() const noexcept { return cores_; }
    const TTCore &core(std::size_t k) const { return cores_.at(k); }

    /// r_0 .. r_d.
    std::vector<std::size_t> ranks() const;
    std::vector<std::size_t> modes() const;
    std::size_t max_rank() const;
    /// ceil(log2 r_k) for k = 0..d.
    std::vector<int> log_ranks() const;

   private:
    std::vector<TTCore> cores_;
};

inline constexpr std::size_t kDefaultDenseCap = std::size_t{1} << 20;
inline constexpr std::size_t kUnboundedRank = std::numeric_limits<std::size_t>::max();

/// Contracts the cores left to right at one multi-index.
double tt_eval(const TensorTrain &tt, std::span<const int> idx);

/// Materializes the full tensor; throws CapacityError above `cap` entries.
DenseTensor tt_to_dense(const TensorTrain &tt, std::size_t cap = kDefaultDenseCap);

/// TT-SVD of a dense tensor.
TensorTrain tt_from_dense(const DenseTensor &dense, double rel_tol = 0.0,
                          std::size_t max_rank = kUnboundedRank);

/// Frobenius norm computed through the cores (no materialization).
double tt_norm(const TensorTrain &tt);

/// QR right-orthogonalization followed by a truncated-SVD left-to-right sweep.
TensorTrain tt_round(const TensorTrain &tt, double rel_tol, std::size_t max_rank = kUnboundedRank);

/// Exactly compresses every bond to r_k <= n r_{k-1} and r_k <= n r_{k+1},
/// then zero-pads each internal rank up to the next power of two.
TensorTrain pad_ranks_pow2(const TensorTrain &tt);

bool is_power_of_two(std::size_t x);
int ceil_log2(std::size_t x);

}  // namespace ttload
