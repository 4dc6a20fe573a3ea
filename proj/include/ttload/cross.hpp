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

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "ttload/maxvol.hpp"
#include "ttload/tensor_train.hpp"

namespace ttload {

/// Black-box tensor entry: multi-index -> value. Must be deterministic and
/// safe to call reentrantly.
using TensorFunction = std::function<double(std::span<const int>)>;

using MultiIndex = std::vector<int>;

/// Nested row/column index sets of a cross approximation. left[k] holds
/// prefixes (i_1..i_{k+1}) for the bond after core k; right[k] holds the
/// matching suffixes (i_{k+2}..i_d). Both vectors have d-1 entries.
struct IndexSets {
    std::vector<std::vector<MultiIndex>> left;
    std::vector<std::vector<MultiIndex>> right;

    /// Every prefix in left[k] extends a prefix in left[k-1], and every suffix
    /// in right[k] extends a suffix in right[k+1].
    bool is_nested() const;
};

struct CrossConfig {
    std::size_t max_rank = 8;
    /// Target for the held-out validation error.
    double rel_tol = 1e-10;
    std::size_t max_sweeps = 8;
    /// Random nested candidates appended to every right index set at the start
    /// of each sweep. Right sets may exceed max_rank by this amount during the
    /// left-to-right half-sweep; ranks never do.
    std::size_t rank_increment = 2;
    std::uint64_t rng_seed = 1;
    std::size_t validation_samples = 1000;
    MaxvolOptions maxvol;
    /// Singular values below this fraction of the largest are treated as zero
    /// when the rank of a cross block is detected. Zero holds every bond at its cap.
    double rank_tol = 1e-13;

    void validate() const;
    bool operator==(const CrossConfig &) const = default;
};

struct CrossReport {
    std::size_t sweeps_run = 0;
    /// Calls of the callback made while fitting (validation excluded).
    std::uint64_t function_evaluations = 0;
    std::uint64_t validation_evaluations = 0;
    /// Training evaluations spent in each completed sweep.
    std::vector<std::uint64_t> evaluations_per_sweep;
    /// Validation error after each sweep.
    std::vector<double> error_history;
    /// max |tt - f| / max |f| over fresh uniformly drawn indices.
    double final_validation_error = 0.0;
    bool converged = false;
};

struct CrossResult {
    TensorTrain tt;
    CrossReport report;
    /// Index sets of the final half-sweep. The train reproduces f on every
    /// entry (left[k-1], i_k, right[k]).
    IndexSets index_sets;
};

/// Counting wrapper around a TensorFunction. Copies share one counter.
class EvalCounter {
   public:
    explicit EvalCounter(TensorFunction f);

    double operator()(std::span<const int> idx) const;
    std::uint64_t count() const noexcept { return counter_->load(std::memory_order_relaxed); }
    void reset() noexcept { counter_->store(0, std::memory_order_relaxed); }
    TensorFunction as_function() const;

   private:
    TensorFunction f_;
    std::shared_ptr<std::atomic<std::uint64_t>> counter_;
};

EvalCounter eval_counter(TensorFunction f);

/// Learns a tensor train from entries of f by alternating cross sweeps with
/// maxvol pivoting. Throws InputFunctionError on non-finite values.
CrossResult tt_cross(const TensorFunction &f, const std::vector<std::size_t> &shape, const CrossConfig &cfg);

/// Value of f at (prefix, i, suffix) for every entry of the cross blocks; the
/// largest relative deviation of `tt` from f over those entries.
double cross_interpolation_error(const TensorTrain &tt, const TensorFunction &f, const IndexSets &sets);

}  // namespace ttload
