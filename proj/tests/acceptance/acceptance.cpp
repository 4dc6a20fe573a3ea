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

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits nonzero
// when any criterion fails. Tolerances are fixed below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "ttload/bits.hpp"
#include "ttload/circuit.hpp"
#include "ttload/config.hpp"
#include "ttload/cross.hpp"
#include "ttload/maxvol.hpp"
#include "ttload/metrics.hpp"
#include "ttload/pipeline.hpp"
#include "ttload/statevector.hpp"

namespace ttload::acceptance {
namespace {

constexpr double kAmplitudeTol = 1e-8;
constexpr double kExactFidelityTol = 1e-8;
constexpr double kInstanceSeconds1 = 5.0;
constexpr double kKs12 = 1e-3;
constexpr double kKs16 = 5e-4;
constexpr double kSeconds2 = 60.0;
constexpr std::size_t kChi = 8;
constexpr double kMinR2 = 0.98;
constexpr double kSeconds4 = 120.0;
constexpr double kKlMirrored = 1e-2;
constexpr double kSeconds5 = 120.0;
constexpr double kKlInterleaved = 5e-2;
constexpr double kSeconds6 = 300.0;
constexpr double kMergeFidelityTol = 1e-10;
constexpr double kPlantedTol = 1e-8;
constexpr double kOracleTol = 1e-12;
constexpr double kSeconds8 = 600.0;

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
            detail << " [violated: " << what << "]";
        }
    }
};

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

ExperimentConfig lognormal_config(std::size_t dims, const std::string &scheme) {
    ExperimentConfig cfg;
    cfg.distribution.kind = dims == 1 ? "lognormal_1d" : "lognormal_nd";
    cfg.distribution.dims = dims;
    cfg.distribution.mu = 0.0;
    cfg.distribution.sigma = 0.25;
    cfg.distribution.correlation = 0.3;
    cfg.ordering.scheme = ordering_scheme_from_string(scheme);
    cfg.cross.max_rank = kChi;
    cfg.compile.chi_cap = kChi;
    cfg.validate();
    return cfg;
}

struct Fitted {
    FitResult fit;
    CircuitPlan plan;
    MetricReport metrics;
    double seconds = 0.0;
};

Fitted fit_and_measure(const ExperimentConfig &cfg, int q, std::uint64_t seed) {
    const auto t0 = clock_type::now();
    FitResult fit = fit_point(cfg, q, seed);
    CircuitPlan plan = compile_tt(fit.cross.tt, cfg.compile);
    MetricReport m = measure(run(plan), fit.target, cfg.metrics);
    return {std::move(fit), std::move(plan), std::move(m), seconds_since(t0)};
}

double amplitude_deviation(const Eigen::VectorXcd &amps, const TensorTrain &tt, double normalizer) {
    const auto dense = oracle::dense(tt);
    double m = 0.0;
    for (std::size_t i = 0; i < dense.size(); ++i)
        m = std::max(m, std::abs(amps[Eigen::Index(i)] - dense[i] / normalizer));
    return m;
}

Eigen::VectorXcd sqrt_probabilities(const DiscreteDistribution &dd) {
    const auto p = dd.probabilities();
    Eigen::VectorXcd v(Eigen::Index(p.size()));
    for (std::size_t i = 0; i < p.size(); ++i) v[Eigen::Index(i)] = std::sqrt(p[i]);
    return v;
}

TensorTrain random_staircase_tt(std::size_t d, std::size_t chi, std::uint64_t seed) {
    std::vector<std::size_t> ranks(d + 1, chi), modes(d, 2);
    ranks.front() = ranks.back() = 1;
    return pad_ranks_pow2(oracle::random_tt(ranks, modes, seed));
}

Verdict criterion1() {
    Verdict v;
    double worst_amp = 0.0, worst_fid = 0.0, slowest = 0.0;
    int instances = 0;
    std::mt19937_64 gen(101);
    for (int trial = 0; trial < 40; ++trial) {
        const auto t0 = clock_type::now();
        const std::size_t d = 2 + gen() % 11;
        const std::size_t chi = std::size_t(1) << (gen() % 4);
        TensorTrain tt = random_staircase_tt(d, chi, gen());
        CircuitPlan plan = tt_to_circuit(tt, kChi);
        StateVector sv = run(plan);
        worst_amp = std::max(worst_amp, amplitude_deviation(sv.amps, tt, plan.normalizer));
        const auto dense = oracle::dense(tt);
        Eigen::VectorXcd target(Eigen::Index(dense.size()));
        for (std::size_t i = 0; i < dense.size(); ++i) target[Eigen::Index(i)] = dense[i];
        worst_fid = std::max(worst_fid, 1.0 - fidelity(sv.amps, target / target.norm()));
        slowest = std::max(slowest, seconds_since(t0));
        ++instances;
    }
    // Interleaved fits enter the amplitude check only: the best rank-8 train of
    // that ordering already sits about 5e-6 below unit fidelity.
    struct Case {
        std::size_t dims;
        const char *scheme;
        int q;
    };
    const Case cases[] = {{1, "sequential", 4},  {1, "sequential", 8}, {1, "sequential", 10},
                          {1, "sequential", 12}, {2, "sequential", 4}, {2, "mirrored", 5},
                          {2, "sequential", 6},  {2, "mirrored", 6},   {2, "interleaved", 6}};
    double interleaved_fid = 0.0;
    std::uint64_t seed = 1;
    for (const Case &c : cases) {
        ExperimentConfig cfg = lognormal_config(c.dims, c.scheme);
        const auto t0 = clock_type::now();
        FitResult fit = fit_point(cfg, c.q, seed++);
        CircuitPlan plan = tt_to_circuit(pad_ranks_pow2(fit.cross.tt), kChi);
        StateVector sv = run(plan);
        worst_amp = std::max(worst_amp, amplitude_deviation(sv.amps, fit.cross.tt, plan.normalizer));
        const double loss = 1.0 - fidelity(sv.amps, sqrt_probabilities(fit.target));
        if (cfg.ordering.scheme == OrderingScheme::interleaved)
            interleaved_fid = std::max(interleaved_fid, loss);
        else
            worst_fid = std::max(worst_fid, loss);
        slowest = std::max(slowest, seconds_since(t0));
        ++instances;
    }
    v.detail << instances << " instances, max amplitude error " << sci(worst_amp) << ", max 1-fidelity "
             << sci(worst_fid) << " (interleaved fit " << sci(interleaved_fid) << "), slowest " << sci(slowest)
             << " s";
    v.require(worst_amp <= kAmplitudeTol, "amplitude error <= " + sci(kAmplitudeTol));
    v.require(worst_fid <= kExactFidelityTol, "fidelity >= 1 - " + sci(kExactFidelityTol));
    v.require(slowest < kInstanceSeconds1, "runtime < 5 s per instance");
    return v;
}

Verdict criterion2() {
    Verdict v;
    const auto t0 = clock_type::now();
    ExperimentConfig cfg = lognormal_config(1, "sequential");
    Fitted a = fit_and_measure(cfg, 12, 12);
    Fitted b = fit_and_measure(cfg, 16, 16);
    const double elapsed = seconds_since(t0);
    v.detail << "KS(d=12) " << sci(*a.metrics.ks) << ", KS(d=16) " << sci(*b.metrics.ks) << ", " << sci(elapsed)
             << " s";
    v.require(*a.metrics.ks <= kKs12, "KS(d=12) <= 1e-3");
    v.require(*b.metrics.ks <= kKs16, "KS(d=16) <= 5e-4");
    v.require(elapsed < kSeconds2, "runtime < 60 s");
    return v;
}

Verdict criterion3() {
    Verdict v;
    ExperimentConfig cfg = lognormal_config(1, "sequential");
    cfg.compile.merge = false;
    int widest = 0;
    for (int q = 4; q <= 14; ++q) {
        FitResult fit = fit_point(cfg, q, std::uint64_t(q));
        CircuitPlan plan = compile_tt(fit.cross.tt, cfg.compile);
        const DepthReport rep = depth_report(plan);
        widest = std::max(widest, rep.max_gate_width);
        const std::size_t baseline = grover_rudolph_baseline(fit.target).total_gate_count();
        v.require(rep.gate_count == std::size_t(q), "TT gate count == q at q=" + std::to_string(q));
        v.require(rep.max_gate_width <= 1 + ceil_log2(kChi), "gate width <= 4 at q=" + std::to_string(q));
        v.require(baseline == (std::size_t(1) << q) - 1, "baseline == 2^q - 1 at q=" + std::to_string(q));
    }
    v.detail << "q=4..14: TT gate count == q, baseline == 2^q-1, widest gate " << widest;
    return v;
}

double r_squared(const std::vector<double> &xs, const std::vector<double> &ys, double *slope) {
    const double n = double(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i] / n, my += ys[i] / n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (slope) *slope = sxy / sxx;
    return sxy * sxy / (sxx * syy);
}

Verdict criterion4() {
    Verdict v;
    const auto t0 = clock_type::now();
    ExperimentConfig cfg = lognormal_config(1, "sequential");
    // Fixed sweep budget and bond ranks held at chi, so counts reflect the
    // per-site cost rather than convergence or numerical rank drops.
    cfg.cross.rel_tol = 0.0;
    cfg.cross.max_sweeps = 4;
    ExperimentConfig adaptive = cfg;
    cfg.cross.rank_tol = 0.0;
    std::vector<double> xs, ys, ys_adaptive;
    for (int q = 6; q <= 16; ++q) {
        xs.push_back(q);
        ys.push_back(double(fit_point(cfg, q, std::uint64_t(q)).cross.report.function_evaluations));
        ys_adaptive.push_back(
            double(fit_point(adaptive, q, std::uint64_t(q)).cross.report.function_evaluations));
    }
    double slope = 0.0;
    const double r2 = r_squared(xs, ys, &slope);
    const double r2_adaptive = r_squared(xs, ys_adaptive, nullptr);
    const double elapsed = seconds_since(t0);
    v.detail << "evaluations " << ys.front() << ".." << ys.back() << ", slope " << sci(slope) << " per qubit, R^2 "
             << r2 << " (adaptive ranks: " << ys_adaptive.front() << ".." << ys_adaptive.back() << ", R^2 "
             << r2_adaptive << "), " << sci(elapsed) << " s";
    v.require(slope > 0.0, "evaluations grow with q");
    v.require(r2 >= kMinR2, "R^2 >= 0.98");
    v.require(elapsed < kSeconds4, "runtime < 120 s");
    return v;
}

Verdict criterion5() {
    Verdict v;
    const auto t0 = clock_type::now();
    Fitted mirrored = fit_and_measure(lognormal_config(2, "mirrored"), 8, 5);
    Fitted sequential = fit_and_measure(lognormal_config(2, "sequential"), 8, 5);
    const double elapsed = seconds_since(t0);
    v.detail << "KL mirrored " << sci(*mirrored.metrics.kl) << ", sequential " << sci(*sequential.metrics.kl)
             << ", " << sci(elapsed) << " s";
    v.require(*mirrored.metrics.kl <= kKlMirrored, "mirrored KL <= 1e-2");
    v.require(*mirrored.metrics.kl <= *sequential.metrics.kl, "mirrored KL <= sequential KL");
    v.require(elapsed < kSeconds5, "runtime < 120 s");
    return v;
}

// KL of the best rank-chi train in the Frobenius sense, as a reference for
// what any rank-chi fit can reach on this instance.
double svd_reference_kl(const ExperimentConfig &cfg, int q) {
    DiscreteDistribution dd = discretize(cfg.distribution_spec(), cfg.grid_spec(q), cfg.ordering_map(q));
    const auto p = dd.probabilities();
    std::vector<double> amps(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) amps[i] = std::sqrt(p[i]);
    const std::size_t d = std::size_t(dd.total_qubits());
    TensorTrain tt = tt_round(tt_from_dense(DenseTensor(std::vector<std::size_t>(d, 2), amps)), 0.0, kChi);
    const auto approx = tt_to_dense(tt).data();
    double total = 0.0;
    for (double a : approx) total += a * a;
    std::vector<double> qp(approx.size());
    for (std::size_t i = 0; i < approx.size(); ++i) qp[i] = approx[i] * approx[i] / total;
    return kl_divergence(p, qp);
}

Verdict criterion6() {
    Verdict v;
    const auto t0 = clock_type::now();
    ExperimentConfig inter = lognormal_config(3, "interleaved");
    ExperimentConfig seq = lognormal_config(3, "sequential");
    inter.cross.max_sweeps = seq.cross.max_sweeps = 16;
    Fitted a = fit_and_measure(inter, 6, 6);
    Fitted b = fit_and_measure(seq, 6, 6);
    const double elapsed = seconds_since(t0);
    v.detail << "KL interleaved " << sci(*a.metrics.kl) << ", sequential " << sci(*b.metrics.kl) << ", "
             << sci(elapsed) << " s; best rank-8 truncation KL interleaved " << sci(svd_reference_kl(inter, 6))
             << ", sequential " << sci(svd_reference_kl(seq, 6));
    v.require(*a.metrics.kl <= kKlInterleaved, "interleaved KL <= 5e-2");
    v.require(*a.metrics.kl <= *b.metrics.kl, "interleaved KL <= sequential KL");
    v.require(elapsed < kSeconds6, "runtime < 300 s");
    return v;
}

Verdict criterion7() {
    Verdict v;
    std::mt19937_64 gen(707);
    int strict = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t d = 3 + gen() % 8;
        const std::size_t chi = std::size_t(1) << (1 + gen() % 3);
        CircuitPlan plan = tt_to_circuit(random_staircase_tt(d, chi, gen()), kChi);
        CircuitPlan merged = merge_gates(plan);
        const double loss = 1.0 - fidelity(run(merged).amps, run(plan).amps);
        worst = std::max(worst, loss);
        v.require(loss <= kMergeFidelityTol, "merged fidelity at trial " + std::to_string(trial));
        v.require(merged.depth() <= plan.depth(), "merged depth <= unmerged at trial " + std::to_string(trial));
        if (merged.depth() < plan.depth()) ++strict;
    }
    v.detail << "50 plans, max 1-fidelity " << sci(worst) << ", strict depth reductions " << strict;
    v.require(strict >= 1, "strict reduction on at least one staircase");
    return v;
}

double maxvol_dominance(const Eigen::MatrixXd &m, const std::vector<Eigen::Index> &rows) {
    Eigen::MatrixXd sub(m.cols(), m.cols());
    for (std::size_t j = 0; j < rows.size(); ++j) sub.row(Eigen::Index(j)) = m.row(rows[j]);
    Eigen::MatrixXd c = sub.transpose().fullPivLu().solve(m.transpose()).transpose();
    return c.cwiseAbs().maxCoeff();
}

Verdict criterion8() {
    Verdict v;
    const auto t0 = clock_type::now();
    std::mt19937_64 gen(808);
    std::normal_distribution<double> normal;

    double dom = 0.0;
    for (int t = 0; t < 100; ++t) {
        const Eigen::Index r = 1 + Eigen::Index(gen() % 10);
        const Eigen::Index n = r + Eigen::Index(gen() % 90);
        Eigen::MatrixXd m(n, r);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < r; ++j) m(i, j) = normal(gen);
        dom = std::max(dom, maxvol_dominance(m, maxvol(m)));
    }
    v.require(dom <= MaxvolOptions{}.swap_tol + kOracleTol, "maxvol dominance");

    double planted = 0.0;
    struct Planted {
        std::vector<std::size_t> ranks, modes;
    };
    const Planted models[] = {{{1, 4, 4, 1}, {8, 8, 8}},
                              {{1, 2, 3, 3, 2, 1}, {2, 3, 4, 3, 2}},
                              {{1, 2, 4, 4, 4, 4, 4, 2, 1}, {2, 2, 2, 2, 2, 2, 2, 2}},
                              {{1, 3, 3, 3, 1}, {4, 5, 6, 4}}};
    for (const Planted &pm : models) {
        TensorTrain truth = oracle::random_tt(pm.ranks, pm.modes, gen());
        CrossConfig cc;
        cc.max_rank = 4;
        cc.rng_seed = gen();
        cc.rel_tol = 1e-12;
        CrossResult res = tt_cross(
            [&](std::span<const int> idx) { return tt_eval(truth, idx); }, pm.modes, cc);
        const auto a = oracle::dense(truth), b = oracle::dense(res.tt);
        planted = std::max({planted, oracle::max_abs_diff(a, b) > 0 ? oracle::frobenius([&] {
                                                                        std::vector<double> diff(a.size());
                                                                        for (std::size_t i = 0; i < a.size(); ++i)
                                                                            diff[i] = a[i] - b[i];
                                                                        return diff;
                                                                    }()) / oracle::frobenius(a)
                                                                  : 0.0,
                            res.report.final_validation_error});
    }
    v.require(planted <= kPlantedTol, "planted-rank recovery");

    double gate_err = 0.0;
    for (int t = 0; t < 60; ++t) {
        const int d = 1 + int(gen() % 8);
        const int w = 1 + int(gen() % std::min(d, 3));
        const int top = 1 + int(gen() % (d - w + 1));
        GateOp g;
        g.matrix = oracle::random_unitary(1 << w, gen());
        for (int q = top + w - 1; q >= top; --q) g.qubits.push_back(q);
        // Descending qubit order puts `top` last, so the matrix is bit-reversed
        // relative to the Kronecker layout.
        const Eigen::MatrixXcd full = oracle::kron_embed(oracle::reverse_bits(g.matrix), top, d);
        StateVector sv{d, oracle::random_state(d, gen())};
        const Eigen::VectorXcd expect = full * sv.amps;
        gate_err = std::max(gate_err, (apply_gate(sv, g).amps - expect).cwiseAbs().maxCoeff());
        if (d - w >= 1) {
            GateOp c = g;
            for (int q = 1; q <= d && c.controls.empty(); ++q)
                if (std::find(g.qubits.begin(), g.qubits.end(), q) == g.qubits.end()) {
                    c.controls = {q};
                    c.control_values = {int(gen() % 2)};
                }
            const Eigen::VectorXcd cexp = oracle::loop_embed(c, d) * sv.amps;
            gate_err = std::max(gate_err, (apply_gate(sv, c).amps - cexp).cwiseAbs().maxCoeff());
        }
    }
    v.require(gate_err <= kOracleTol, "apply_gate vs Kronecker oracle");

    double metric_err = 0.0;
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 2 + gen() % 200;
        const auto p = oracle::random_simplex(n, gen()), q = oracle::random_simplex(n, gen());
        const auto fp = oracle::prefix_sums(p), fq = oracle::prefix_sums(q);
        metric_err = std::max(metric_err, std::abs(ks_distance(fp, fq) - oracle::naive_ks(fp, fq)));
        metric_err = std::max(metric_err, std::abs(kl_divergence(p, q) - oracle::naive_kl(p, q)));
        const int nq = 1 + int(gen() % 6);
        const Eigen::VectorXcd a = oracle::random_state(nq, gen()), b = oracle::random_state(nq, gen());
        metric_err = std::max(metric_err, std::abs(fidelity(a, b) - oracle::overlap_abs(a, b)));
    }
    v.require(metric_err <= kOracleTol, "metrics vs naive loops");

    const double elapsed = seconds_since(t0);
    v.detail << "maxvol dominance " << dom << ", planted recovery " << sci(planted) << ", gate error "
             << sci(gate_err) << ", metric error " << sci(metric_err) << ", " << sci(elapsed) << " s";
    v.require(elapsed < kSeconds8, "runtime < 10 min");
    return v;
}

}  // namespace
}  // namespace ttload::acceptance

int main() {
    using namespace ttload::acceptance;
    struct Entry {
        int id;
        const char *name;
        Verdict (*run)();
    };
    const Entry entries[] = {{1, "exact compilation", criterion1},
                             {2, "univariate accuracy", criterion2},
                             {3, "gate count scaling", criterion3},
                             {4, "training evaluations linear in qubits", criterion4},
                             {5, "bivariate mirrored accuracy", criterion5},
                             {6, "multivariate interleaved accuracy", criterion6},
                             {7, "merging soundness", criterion7},
                             {8, "oracle suite", criterion8}};
    int failures = 0;
    for (const Entry &e : entries) {
        Verdict v;
        try {
            v = e.run();
        } catch (const std::exception &ex) {
            v.pass = false;
            v.detail << "exception: " << ex.what();
        }
        std::printf("%s criterion %d (%s): %s\n", v.pass ? "PASS" : "FAIL", e.id, e.name, v.detail.str().c_str());
        std::fflush(stdout);
        if (!v.pass) ++failures;
    }
    std::printf("N/A  criterion 9 (declared not reproducible): absolute wall-clock timings, transpiled depth "
                "magnitudes and hardware runs are replaced by the scaling and property checks above\n");
    return failures == 0 ? 0 : 1;
}
