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

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ttload/cross.hpp"
#include "ttload/errors.hpp"
#include "ttload/maxvol.hpp"

namespace ttload {
namespace {

Eigen::MatrixXd random_matrix(Eigen::Index n, Eigen::Index r, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> nd;
    Eigen::MatrixXd m(n, r);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = nd(gen);
    return m;
}

// max |M * M[S]^{-1}| by an explicit solve, independent of maxvol's updates.
double dominance(const Eigen::MatrixXd &m, const std::vector<Eigen::Index> &rows) {
    Eigen::MatrixXd sub(m.cols(), m.cols());
    for (std::size_t j = 0; j < rows.size(); ++j) sub.row(Eigen::Index(j)) = m.row(rows[j]);
    Eigen::MatrixXd c = sub.transpose().fullPivLu().solve(m.transpose()).transpose();
    return c.cwiseAbs().maxCoeff();
}

TEST(maxvol, identity_rows_over_zero_rows) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 2);
    m(0, 0) = m(1, 1) = 1.0;
    auto rows = maxvol(m);
    std::set<Eigen::Index> got(rows.begin(), rows.end());
    EXPECT_EQ(got, (std::set<Eigen::Index>{0, 1}));
}

TEST(maxvol, single_column_picks_max_modulus) {
    Eigen::MatrixXd m(3, 1);
    m << 1, 2, -3;
    EXPECT_EQ(maxvol(m), (std::vector<Eigen::Index>{2}));
}

TEST(maxvol, random_tall_matrix_dominance) {
    Eigen::MatrixXd m = random_matrix(64, 8, 1);
    auto rows = maxvol(m);
    ASSERT_EQ(rows.size(), 8u);
    EXPECT_LE(dominance(m, rows), 1.01 + 1e-12);
}

TEST(maxvol, dominance_property_on_many_matrices) {
    std::mt19937_64 gen(2);
    for (int t = 0; t < 100; ++t) {
        const Eigen::Index r = 1 + Eigen::Index(gen() % 8);
        const Eigen::Index n = r + Eigen::Index(gen() % 60);
        Eigen::MatrixXd m = random_matrix(n, r, gen());
        auto rows = maxvol(m);
        ASSERT_EQ(std::set<Eigen::Index>(rows.begin(), rows.end()).size(), std::size_t(r));
        ASSERT_LE(dominance(m, rows), 1.01 + 1e-12) << "trial " << t;
    }
}

TEST(maxvol, locally_maximal_volume) {
    Eigen::MatrixXd m = random_matrix(20, 3, 3);
    auto rows = maxvol(m);
    auto vol = [&](const std::vector<Eigen::Index> &s) {
        Eigen::MatrixXd sub(3, 3);
        for (int j = 0; j < 3; ++j) sub.row(j) = m.row(s[std::size_t(j)]);
        return std::abs(sub.determinant());
    };
    const double base = vol(rows);
    for (std::size_t j = 0; j < 3; ++j)
        for (Eigen::Index i = 0; i < 20; ++i) {
            auto s = rows;
            s[j] = i;
            EXPECT_LE(vol(s), 1.01 * base * (1 + 1e-12));
        }
}

TEST(maxvol, rank_deficiency_reports_rank) {
    Eigen::MatrixXd m = random_matrix(10, 2, 4);
    Eigen::MatrixXd def(10, 3);
    def << m, m.col(0) + 2 * m.col(1);
    try {
        maxvol(def);
        FAIL() << "expected RankDeficientError";
    } catch (const RankDeficientError &e) {
        EXPECT_EQ(e.rank(), 2u);
    }
    EXPECT_THROW(maxvol(Eigen::MatrixXd::Zero(5, 1)), RankDeficientError);
    EXPECT_THROW(maxvol(random_matrix(2, 3, 5)), std::invalid_argument);
}

TEST(maxvol, deterministic) {
    Eigen::MatrixXd m = random_matrix(40, 5, 6);
    EXPECT_EQ(maxvol(m), maxvol(m));
}

TEST(eval_counter, counts_exactly) {
    EvalCounter c = eval_counter([](std::span<const int> idx) { return double(idx[0]); });
    std::vector<int> idx{3};
    for (int i = 0; i < 5; ++i) EXPECT_EQ(c(idx), 3.0);
    EXPECT_EQ(c.count(), 5u);
    TensorFunction f = c.as_function();
    f(idx);
    EXPECT_EQ(c.count(), 6u);
    c.reset();
    EXPECT_EQ(c.count(), 0u);
}

TEST(tt_cross, constant_function_is_rank_one) {
    CrossConfig cfg;
    cfg.max_rank = 4;
    auto res = tt_cross([](std::span<const int>) { return 1.0; }, {2, 2, 2, 2}, cfg);
    EXPECT_EQ(res.tt.max_rank(), 1u);
    EXPECT_LE(res.report.final_validation_error, 1e-12);
    EXPECT_TRUE(res.report.converged);
}

TEST(tt_cross, separable_function_is_rank_one) {
    auto g = [](int i) { return 1.0 + std::sin(0.3 * i); };
    auto h = [](int j) { return std::exp(-0.1 * j); };
    CrossConfig cfg;
    auto res = tt_cross([&](std::span<const int> x) { return g(x[0]) * h(x[1]); }, {16, 16}, cfg);
    EXPECT_EQ(res.tt.ranks(), (std::vector<std::size_t>{1, 1, 1}));
    double max_err = 0.0;
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j)
            max_err = std::max(max_err, std::abs(tt_eval(res.tt, std::vector<int>{i, j}) - g(i) * h(j)));
    EXPECT_LE(max_err, 1e-10);
}

TEST(tt_cross, planted_tt_recovery_three_sites) {
    TensorTrain planted = oracle::random_tt({1, 4, 4, 1}, {8, 8, 8}, 7);
    CrossConfig cfg;
    cfg.max_rank = 4;
    auto res = tt_cross([&](std::span<const int> x) { return tt_eval(planted, x); }, {8, 8, 8}, cfg);
    const auto ref = oracle::dense(planted), got = oracle::dense(res.tt);
    std::vector<double> diff(ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) diff[i] = got[i] - ref[i];
    EXPECT_LE(oracle::frobenius(diff), 1e-8 * oracle::frobenius(ref));
    EXPECT_LE(res.tt.max_rank(), 4u);
}

TEST(tt_cross, planted_recovery_property) {
    std::mt19937_64 gen(8);
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t d = 3 + gen() % 6;
        const std::size_t n = 2 + gen() % 7;
        const std::size_t chi = 1 + gen() % 4;
        std::vector<std::size_t> ranks(d + 1, chi), modes(d, n);
        ranks.front() = ranks.back() = 1;
        TensorTrain planted = oracle::random_tt(ranks, modes, gen());
        CrossConfig cfg;
        cfg.max_rank = chi;
        cfg.rng_seed = gen();
        auto res = tt_cross([&](std::span<const int> x) { return tt_eval(planted, x); }, modes, cfg);
        EXPECT_LE(res.report.final_validation_error, 1e-8) << "d=" << d << " n=" << n << " chi=" << chi;
    }
}

TEST(tt_cross, interpolates_cross_entries_and_keeps_nesting) {
    auto f = [](std::span<const int> x) {
        double s = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) s += double(x[k]) / double(1 << k);
        return std::exp(-0.3 * s) + 0.1 * std::cos(s);
    };
    for (std::size_t sweeps = 1; sweeps <= 3; ++sweeps) {
        CrossConfig cfg;
        cfg.max_rank = 6;
        cfg.max_sweeps = sweeps;
        cfg.rel_tol = 0.0;
        auto res = tt_cross(f, std::vector<std::size_t>(10, 2), cfg);
        EXPECT_EQ(res.report.sweeps_run, sweeps);
        EXPECT_TRUE(res.index_sets.is_nested());
        EXPECT_LE(cross_interpolation_error(res.tt, f, res.index_sets), 1e-10);
        for (std::size_t b = 0; b + 1 < 10; ++b) {
            EXPECT_EQ(res.index_sets.left[b].size(), res.tt.ranks()[b + 1]);
            EXPECT_EQ(res.index_sets.right[b].size(), res.tt.ranks()[b + 1]);
        }
    }
}

TEST(tt_cross, far_fewer_evaluations_than_grid) {
    auto f = [](std::span<const int> x) {
        double t = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) t += x[k] * std::ldexp(1.0, -int(k) - 1);
        return std::exp(-t);
    };
    CrossConfig cfg;
    cfg.max_rank = 4;
    cfg.rel_tol = 1e-8;
    auto res = tt_cross(f, std::vector<std::size_t>(10, 2), cfg);
    EXPECT_TRUE(res.report.converged);
    EXPECT_LT(res.report.function_evaluations, 1024u / 2);
}

TEST(tt_cross, per_sweep_cost_is_stable_at_fixed_rank) {
    TensorTrain planted = oracle::random_tt({1, 2, 2, 2, 2, 2, 1}, std::vector<std::size_t>(6, 2), 9);
    auto counter = eval_counter([&](std::span<const int> x) { return tt_eval(planted, x); });
    CrossConfig cfg;
    cfg.max_rank = 2;
    cfg.rel_tol = 0.0;
    cfg.max_sweeps = 1;
    tt_cross(counter.as_function(), std::vector<std::size_t>(6, 2), cfg);
    const auto one = counter.count();
    counter.reset();
    cfg.max_sweeps = 3;
    auto res = tt_cross(counter.as_function(), std::vector<std::size_t>(6, 2), cfg);
    const auto &per = res.report.evaluations_per_sweep;
    ASSERT_EQ(per.size(), 3u);
    EXPECT_EQ(per[1], per[2]);
    EXPECT_EQ(counter.count(), res.report.function_evaluations + res.report.validation_evaluations);
    EXPECT_EQ(one, per[0] + cfg.validation_samples);
}

TEST(tt_cross, evaluations_cover_cross_blocks) {
    TensorTrain planted = oracle::random_tt({1, 2, 3, 3, 2, 1}, std::vector<std::size_t>(5, 2), 10);
    CrossConfig cfg;
    cfg.max_rank = 3;
    auto res = tt_cross([&](std::span<const int> x) { return tt_eval(planted, x); }, std::vector<std::size_t>(5, 2), cfg);
    const auto r = res.tt.ranks();
    std::uint64_t sum = 0;
    for (std::size_t k = 1; k < r.size(); ++k) sum += r[k - 1] * 2 * r[k];
    for (auto per : res.report.evaluations_per_sweep) EXPECT_GE(per, sum);
}

TEST(tt_cross, deterministic_per_seed) {
    auto f = [](std::span<const int> x) { return 1.0 + x[0] * x[1] + 0.5 * x[2] * x[3] + 0.25 * x[1] * x[3]; };
    CrossConfig cfg;
    cfg.max_rank = 3;
    cfg.rng_seed = 42;
    auto a = tt_cross(f, {3, 3, 3, 3}, cfg);
    auto b = tt_cross(f, {3, 3, 3, 3}, cfg);
    EXPECT_EQ(oracle::dense(a.tt), oracle::dense(b.tt));
    EXPECT_EQ(a.report.function_evaluations, b.report.function_evaluations);
}

TEST(tt_cross, rank_deficient_blocks_reduce_rank) {
    // Mostly zero tensor: only one nonzero entry.
    auto f = [](std::span<const int> x) {
        for (int v : x)
            if (v != 1) return 0.0;
        return 2.0;
    };
    CrossConfig cfg;
    cfg.max_rank = 4;
    cfg.max_sweeps = 4;
    auto res = tt_cross(f, std::vector<std::size_t>(4, 2), cfg);
    EXPECT_LE(res.tt.max_rank(), 4u);
    for (double v : oracle::dense(res.tt)) EXPECT_TRUE(std::isfinite(v));
}

TEST(tt_cross, non_finite_values_raise_with_index) {
    auto f = [](std::span<const int> x) { return x[1] == 1 ? std::nan("") : 1.0; };
    try {
        tt_cross(f, {2, 2, 2}, CrossConfig{});
        FAIL() << "expected InputFunctionError";
    } catch (const InputFunctionError &e) {
        ASSERT_EQ(e.index().size(), 3u);
        EXPECT_EQ(e.index()[1], 1);
    }
}

TEST(tt_cross, config_validation) {
    CrossConfig cfg;
    cfg.max_rank = 0;
    EXPECT_THROW(tt_cross([](std::span<const int>) { return 1.0; }, {2, 2}, cfg), std::invalid_argument);
    EXPECT_THROW(tt_cross([](std::span<const int>) { return 1.0; }, {}, CrossConfig{}), std::invalid_argument);
    EXPECT_THROW(tt_cross([](std::span<const int>) { return 1.0; }, {2, 1}, CrossConfig{}), std::invalid_argument);
}

TEST(tt_cross, single_site) {
    auto res = tt_cross([](std::span<const int> x) { return double(x[0] + 1); }, {5}, CrossConfig{});
    for (int i = 0; i < 5; ++i) EXPECT_DOUBLE_EQ(tt_eval(res.tt, std::vector<int>{i}), i + 1.0);
}

}  // namespace
}  // namespace ttload
