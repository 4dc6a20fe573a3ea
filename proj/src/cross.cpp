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

#include "ttload/cross.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

#include "ttload/errors.hpp"
#include "ttload/rng.hpp"

namespace ttload {

namespace {

using Prefixes = std::vector<MultiIndex>;

std::size_t saturating_mul(std::size_t a, std::size_t b) {
    if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) return std::numeric_limits<std::size_t>::max();
    return a * b;
}

MultiIndex concat(const MultiIndex &prefix, int i, const MultiIndex &suffix) {
    MultiIndex out;
    out.reserve(prefix.size() + 1 + suffix.size());
    out.insert(out.end(), prefix.begin(), prefix.end());
    out.push_back(i);
    out.insert(out.end(), suffix.begin(), suffix.end());
    return out;
}

class Sweeper {
   public:
    Sweeper(const TensorFunction &f, const std::vector<std::size_t> &shape, const CrossConfig &cfg)
        : f_(f), shape_(shape), cfg_(cfg), d_(shape.size()), rng_(cfg.rng_seed) {
        left_.resize(d_ - 1);
        right_.resize(d_ - 1);
        bond_cap_.resize(d_ - 1);
        suffix_cap_.resize(d_ - 1);
        for (std::size_t b = 0; b + 1 < d_; ++b) {
            std::size_t lo = 1, hi = 1;
            for (std::size_t k = 0; k <= b; ++k) lo = saturating_mul(lo, shape[k]);
            for (std::size_t k = b + 1; k < d_; ++k) hi = saturating_mul(hi, shape[k]);
            bond_cap_[b] = std::min({lo, hi, cfg.max_rank});
            suffix_cap_[b] = std::min(hi, cfg.max_rank + cfg.rank_increment);
        }
        // One random suffix per bond, nested right to left.
        for (std::size_t b = d_ - 1; b-- > 0;) {
            const MultiIndex tail = b + 2 < d_ ? right_[b + 1].front() : MultiIndex{};
            right_[b] = {concat({}, static_cast<int>(rng_.uniform_index(shape[b + 1])), tail)};
        }
    }

    std::uint64_t evaluations() const { return evaluations_; }

    TensorTrain left_to_right() {
        enrich_right();
        std::vector<TTCore> cores;
        for (std::size_t k = 0; k + 1 < d_; ++k) {
            const Prefixes prefixes = k == 0 ? Prefixes{MultiIndex{}} : left_[k - 1];
            const Prefixes &suffixes = right_[k];
            const std::size_t n = shape_[k];
            Eigen::MatrixXd block(prefixes.size() * n, suffixes.size());
            for (std::size_t a = 0; a < prefixes.size(); ++a)
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t s = 0; s < suffixes.size(); ++s)
                        block(a * n + i, s) = eval(concat(prefixes[a], int(i), suffixes[s]));
            auto [interp, rows] = interpolative_basis(block, bond_cap_[k]);
            Prefixes next;
            for (auto row : rows) {
                const auto a = static_cast<std::size_t>(row) / n;
                MultiIndex p = prefixes[a];
                p.push_back(static_cast<int>(static_cast<std::size_t>(row) % n));
                next.push_back(std::move(p));
            }
            left_[k] = std::move(next);
            cores.push_back(TTCore::from_left_unfolding(interp, n));
        }
        const Prefixes prefixes = d_ > 1 ? left_[d_ - 2] : Prefixes{MultiIndex{}};
        const std::size_t n = shape_[d_ - 1];
        TTCore last(prefixes.size(), n, 1);
        for (std::size_t a = 0; a < prefixes.size(); ++a)
            for (std::size_t i = 0; i < n; ++i) last(a, i, 0) = eval(concat(prefixes[a], int(i), {}));
        cores.push_back(std::move(last));
        return TensorTrain(std::move(cores));
    }

    // Refreshes the right sets without enrichment so that every bond ends the
    // sweep with |left| == |right| == rank.
    TensorTrain right_to_left() {
        std::vector<TTCore> cores(d_, TTCore(1, 1, 1));
        for (std::size_t k = d_ - 1; k > 0; --k) {
            const Prefixes &prefixes = left_[k - 1];
            const Prefixes suffixes = k + 1 < d_ ? right_[k] : Prefixes{MultiIndex{}};
            const std::size_t n = shape_[k];
            // Transposed block: rows (i, suffix), columns prefixes.
            Eigen::MatrixXd block(n * suffixes.size(), prefixes.size());
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t s = 0; s < suffixes.size(); ++s)
                    for (std::size_t a = 0; a < prefixes.size(); ++a)
                        block(i * suffixes.size() + s, a) = eval(concat(prefixes[a], int(i), suffixes[s]));
            auto [interp, rows] = interpolative_basis(block, bond_cap_[k - 1]);
            Prefixes next;
            for (auto row : rows) {
                const auto i = static_cast<std::size_t>(row) / suffixes.size();
                const auto s = static_cast<std::size_t>(row) % suffixes.size();
                next.push_back(concat({}, static_cast<int>(i), suffixes[s]));
            }
            right_[k - 1] = std::move(next);
            cores[k] = TTCore::from_right_unfolding(interp.transpose(), n);
        }
        const Prefixes suffixes = d_ > 1 ? right_[0] : Prefixes{MultiIndex{}};
        const std::size_t n = shape_[0];
        TTCore first(1, n, suffixes.size());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t s = 0; s < suffixes.size(); ++s) first(0, i, s) = eval(concat({}, int(i), suffixes[s]));
        cores[0] = std::move(first);
        return TensorTrain(std::move(cores));
    }

    IndexSets index_sets() const { return IndexSets{left_, right_}; }

   private:
    double eval(const MultiIndex &idx) {
        ++evaluations_;
        const double v = f_(idx);
        if (!std::isfinite(v)) throw InputFunctionError(idx, "non-finite value");
        return v;
    }

    // Dominant column space of the block (at most max_rank vectors), expressed
    // in interpolative form B * B[rows]^{-1} so that the selected rows are
    // exactly the identity.
    std::pair<Eigen::MatrixXd, std::vector<Eigen::Index>> interpolative_basis(const Eigen::MatrixXd &block,
                                                                               std::size_t max_rank) {
        Eigen::BDCSVD<Eigen::MatrixXd> svd(block, Eigen::ComputeThinU);
        if (svd.info() != Eigen::Success) throw NumericError("tt_cross: SVD of a cross block failed");
        const Eigen::VectorXd &sv = svd.singularValues();
        Eigen::Index rank = 0;
        while (rank < sv.size() && rank < Eigen::Index(max_rank) && sv[rank] > cfg_.rank_tol * sv[0]) ++rank;
        Eigen::MatrixXd basis;
        if (rank == 0) {
            // All-zero block: any single pivot interpolates it.
            basis = Eigen::MatrixXd::Zero(block.rows(), 1);
            basis(0, 0) = 1.0;
        } else {
            basis = svd.matrixU().leftCols(rank);
        }
        std::vector<Eigen::Index> rows = maxvol(basis, cfg_.maxvol);
        Eigen::MatrixXd sub(basis.cols(), basis.cols());
        for (std::size_t j = 0; j < rows.size(); ++j) sub.row(Eigen::Index(j)) = basis.row(rows[j]);
        Eigen::MatrixXd interp = sub.transpose().partialPivLu().solve(basis.transpose()).transpose();
        for (std::size_t j = 0; j < rows.size(); ++j) {
            interp.row(rows[j]).setZero();
            interp(rows[j], Eigen::Index(j)) = 1.0;
        }
        return {std::move(interp), std::move(rows)};
    }

    template <class MakeCandidates>
    void enrich(std::vector<MultiIndex> &set, std::size_t target, MakeCandidates make) {
        if (set.size() >= target) return;
        std::set<MultiIndex> seen(set.begin(), set.end());
        std::vector<MultiIndex> pool;
        for (auto &c : make()) {
            if (!seen.count(c)) pool.push_back(std::move(c));
        }
        while (set.size() < target && !pool.empty()) {
            const auto pick = rng_.uniform_index(pool.size());
            set.push_back(std::move(pool[pick]));
            pool[pick] = std::move(pool.back());
            pool.pop_back();
        }
    }

    void enrich_right() {
        if (cfg_.rank_increment == 0) return;
        for (std::size_t b = d_ - 1; b-- > 0;) {
            const Prefixes tails = b + 2 < d_ ? right_[b + 1] : Prefixes{MultiIndex{}};
            const std::size_t target = std::min(right_[b].size() + cfg_.rank_increment, suffix_cap_[b]);
            enrich(right_[b], target, [&] {
                std::vector<MultiIndex> out;
                for (std::size_t i = 0; i < shape_[b + 1]; ++i)
                    for (const auto &t : tails) out.push_back(concat({}, int(i), t));
                return out;
            });
        }
    }

    const TensorFunction &f_;
    const std::vector<std::size_t> &shape_;
    const CrossConfig &cfg_;
    std::size_t d_;
    Rng rng_;
    std::vector<Prefixes> left_, right_;
    // Ranks never exceed bond_cap_; right sets may oversample up to suffix_cap_
    // during the left-to-right half-sweep.
    std::vector<std::size_t> bond_cap_, suffix_cap_;
    std::uint64_t evaluations_ = 0;
};

double validation_error(const TensorTrain &tt, const TensorFunction &f, const std::vector<std::size_t> &shape,
                        std::size_t samples, Rng &rng, std::uint64_t &evals) {
    double max_diff = 0.0, max_ref = 0.0;
    MultiIndex idx(shape.size());
    for (std::size_t s = 0; s < samples; ++s) {
        for (std::size_t k = 0; k < shape.size(); ++k) idx[k] = static_cast<int>(rng.uniform_index(shape[k]));
        const double ref = f(idx);
        ++evals;
        if (!std::isfinite(ref)) throw InputFunctionError(idx, "non-finite value");
        const double diff = std::abs(tt_eval(tt, idx) - ref);
        max_diff = std::isnan(diff) ? std::numeric_limits<double>::infinity() : std::max(max_diff, diff);
        max_ref = std::max(max_ref, std::abs(ref));
    }
    return max_ref > 0.0 ? max_diff / max_ref : max_diff;
}

}  // namespace

bool IndexSets::is_nested() const {
    if (left.size() != right.size()) return false;
    const std::size_t bonds = left.size();
    for (std::size_t b = 0; b < bonds; ++b) {
        if (left[b].empty() || right[b].empty()) return false;
        for (const auto &p : left[b]) {
            if (p.size() != b + 1) return false;
            if (b == 0) continue;
            const MultiIndex head(p.begin(), p.end() - 1);
            if (std::find(left[b - 1].begin(), left[b - 1].end(), head) == left[b - 1].end()) return false;
        }
        for (const auto &s : right[b]) {
            if (s.size() != bonds - b) return false;
            if (b + 1 == bonds) continue;
            const MultiIndex tail(s.begin() + 1, s.end());
            if (std::find(right[b + 1].begin(), right[b + 1].end(), tail) == right[b + 1].end()) return false;
        }
    }
    return true;
}

void CrossConfig::validate() const {
    if (max_rank < 1) throw std::invalid_argument("CrossConfig: max_rank must be >= 1");
    if (max_sweeps < 1) throw std::invalid_argument("CrossConfig: max_sweeps must be >= 1");
    if (validation_samples < 1) throw std::invalid_argument("CrossConfig: validation_samples must be >= 1");
    if (!(rel_tol >= 0.0)) throw std::invalid_argument("CrossConfig: rel_tol must be >= 0");
}

EvalCounter::EvalCounter(TensorFunction f)
    : f_(std::move(f)), counter_(std::make_shared<std::atomic<std::uint64_t>>(0)) {}

double EvalCounter::operator()(std::span<const int> idx) const {
    counter_->fetch_add(1, std::memory_order_relaxed);
    return f_(idx);
}

TensorFunction EvalCounter::as_function() const {
    return [self = *this](std::span<const int> idx) { return self(idx); };
}

EvalCounter eval_counter(TensorFunction f) { return EvalCounter(std::move(f)); }

CrossResult tt_cross(const TensorFunction &f, const std::vector<std::size_t> &shape, const CrossConfig &cfg) {
    cfg.validate();
    if (shape.empty()) throw std::invalid_argument("tt_cross: empty shape");
    for (auto n : shape) {
        if (n < 2) throw std::invalid_argument("tt_cross: every mode must have size >= 2");
    }

    EvalCounter counted(f);
    const TensorFunction training = counted.as_function();
    Sweeper sweeper(training, shape, cfg);
    Rng validation_rng(derive_seed(cfg.rng_seed, 0x76616c6964ull));

    CrossReport report;
    std::optional<TensorTrain> tt;
    std::uint64_t before = 0;
    for (std::size_t sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
        if (shape.size() > 1) sweeper.left_to_right();
        tt = sweeper.right_to_left();
        report.sweeps_run = sweep + 1;
        report.evaluations_per_sweep.push_back(counted.count() - before);
        before = counted.count();
        report.final_validation_error =
            validation_error(*tt, f, shape, cfg.validation_samples, validation_rng, report.validation_evaluations);
        report.error_history.push_back(report.final_validation_error);
        if (report.final_validation_error <= cfg.rel_tol) {
            report.converged = true;
            break;
        }
    }
    report.function_evaluations = counted.count();
    return CrossResult{std::move(*tt), report, sweeper.index_sets()};
}

double cross_interpolation_error(const TensorTrain &tt, const TensorFunction &f, const IndexSets &sets) {
    const std::size_t d = tt.order();
    double max_diff = 0.0, max_ref = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        const std::vector<MultiIndex> prefixes = k > 0 ? sets.left.at(k - 1) : std::vector<MultiIndex>{{}};
        const std::vector<MultiIndex> suffixes = k + 1 < d ? sets.right.at(k) : std::vector<MultiIndex>{{}};
        for (const auto &p : prefixes)
            for (std::size_t i = 0; i < tt.core(k).mode(); ++i)
                for (const auto &s : suffixes) {
                    const MultiIndex idx = concat(p, int(i), s);
                    const double ref = f(idx);
                    max_diff = std::max(max_diff, std::abs(tt_eval(tt, idx) - ref));
                    max_ref = std::max(max_ref, std::abs(ref));
                }
    }
    return max_ref > 0.0 ? max_diff / max_ref : max_diff;
}

}  // namespace ttload
