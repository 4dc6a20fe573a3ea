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

#include "ttload/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

#include "ttload/errors.hpp"

namespace ttload {

namespace {

using cd = std::complex<double>;

// Local bit position (from the LSB) of each listed qubit inside `support`.
std::vector<int> local_positions(const std::vector<int> &qubits, const std::vector<int> &support) {
    std::vector<int> pos;
    const int m = int(support.size());
    for (int q : qubits) {
        auto it = std::find(support.begin(), support.end(), q);
        if (it == support.end()) throw std::invalid_argument("expand_gate: qubit outside support");
        pos.push_back(m - 1 - int(it - support.begin()));
    }
    return pos;
}

// Support-local indices of g's target basis states.
int scatter(int local, const std::vector<int> &positions) {
    const int m = int(positions.size());
    int out = 0;
    for (int t = 0; t < m; ++t) {
        if ((local >> (m - 1 - t)) & 1) out |= 1 << positions[std::size_t(t)];
    }
    return out;
}

}  // namespace

std::string to_string(GateOrigin o) {
    switch (o) {
        case GateOrigin::tt_core: return "tt_core";
        case GateOrigin::merged: return "merged";
        case GateOrigin::baseline_level: return "baseline_level";
    }
    return "?";
}

GateOrigin gate_origin_from_string(const std::string &s) {
    if (s == "tt_core") return GateOrigin::tt_core;
    if (s == "merged") return GateOrigin::merged;
    if (s == "baseline_level") return GateOrigin::baseline_level;
    throw std::invalid_argument("unknown gate origin '" + s + "'");
}

std::vector<int> GateOp::support() const {
    std::vector<int> s = qubits;
    s.insert(s.end(), controls.begin(), controls.end());
    std::sort(s.begin(), s.end(), std::greater<>());
    return s;
}

std::size_t CircuitPlan::depth() const {
    std::vector<std::size_t> frontier(std::size_t(num_qubits) + 1, 0);
    std::size_t depth = 0;
    for (const auto &g : gates) {
        std::size_t level = 0;
        for (int q : g.support()) level = std::max(level, frontier.at(std::size_t(q)));
        ++level;
        for (int q : g.support()) frontier[std::size_t(q)] = level;
        depth = std::max(depth, level);
    }
    return depth;
}

double unitarity_error(const Eigen::MatrixXcd &w) {
    if (w.rows() != w.cols()) return std::numeric_limits<double>::infinity();
    return (w.adjoint() * w - Eigen::MatrixXcd::Identity(w.rows(), w.cols())).cwiseAbs().maxCoeff();
}

void validate_gate(const GateOp &g, int num_qubits) {
    if (g.qubits.empty()) throw std::invalid_argument("gate has no target qubits");
    std::set<int> seen;
    for (int q : g.support()) {
        if (q < 1 || q > num_qubits) {
            throw std::invalid_argument("gate qubit " + std::to_string(q) + " outside 1.." + std::to_string(num_qubits));
        }
        if (!seen.insert(q).second) throw std::invalid_argument("gate acts twice on qubit " + std::to_string(q));
    }
    if (g.controls.size() != g.control_values.size()) {
        throw std::invalid_argument("gate control values do not match its controls");
    }
    for (int v : g.control_values) {
        if (v != 0 && v != 1) throw std::invalid_argument("gate control value must be 0 or 1");
    }
    const Eigen::Index dim = Eigen::Index(1) << g.qubits.size();
    if (g.matrix.rows() != dim || g.matrix.cols() != dim) {
        throw std::invalid_argument("gate matrix is not 2^m x 2^m for its " + std::to_string(g.qubits.size()) +
                                    " target qubits");
    }
    if (unitarity_error(g.matrix) > kUnitarityTol) throw std::invalid_argument("gate matrix is not unitary");
}

void validate_plan(const CircuitPlan &plan) {
    if (plan.num_qubits < 1) throw std::invalid_argument("plan has no qubits");
    if (!(plan.normalizer > 0.0)) throw std::invalid_argument("plan normalizer must be positive");
    for (const auto &g : plan.gates) validate_gate(g, plan.num_qubits);
}

Eigen::MatrixXd reshape_core(const TTCore &core) {
    if (!is_power_of_two(core.left())) {
        throw std::invalid_argument("reshape_core: left rank " + std::to_string(core.left()) +
                                    " is not a power of two; pad the train first");
    }
    const std::size_t L = core.left();
    Eigen::MatrixXd m(core.mode() * L, core.right());
    for (std::size_t i = 0; i < core.mode(); ++i)
        for (std::size_t j = 0; j < L; ++j)
            for (std::size_t b = 0; b < core.right(); ++b) m(Eigen::Index(i * L + j), Eigen::Index(b)) = core(j, i, b);
    return m;
}

Eigen::MatrixXcd complete_isometry(const Eigen::MatrixXcd &isometry) {
    const Eigen::Index m = isometry.rows();
    const Eigen::Index n = isometry.cols();
    if (n > m) throw std::invalid_argument("complete_isometry: more columns than rows");
    if ((isometry.adjoint() * isometry - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10) {
        throw NumericError("complete_isometry: columns are not orthonormal");
    }
    Eigen::MatrixXcd out(m, m);
    out.leftCols(n) = isometry;
    Eigen::Index filled = n;
    for (Eigen::Index e = 0; e < m && filled < m; ++e) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Unit(m, e);
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index c = 0; c < filled; ++c) v -= out.col(c).dot(v) * out.col(c);
        }
        const double nv = v.norm();
        if (nv <= 1e-8) continue;
        out.col(filled++) = v / nv;
    }
    if (filled != m) throw NumericError("complete_isometry: could not complete the basis");
    return out;
}

CircuitPlan tt_to_circuit(const TensorTrain &tt, std::size_t chi_cap) {
    const std::size_t d = tt.order();
    const auto ranks = tt.ranks();
    for (std::size_t k = 0; k < d; ++k) {
        if (tt.core(k).mode() != 2) throw std::invalid_argument("tt_to_circuit: every mode size must be 2");
    }
    for (std::size_t k = 1; k < d; ++k) {
        if (ranks[k] > chi_cap) {
            throw std::invalid_argument("tt_to_circuit: rank " + std::to_string(ranks[k]) + " exceeds chi_cap " +
                                        std::to_string(chi_cap) + "; round the train first");
        }
        if (!is_power_of_two(ranks[k]) || ranks[k] > 2 * ranks[k - 1] || ranks[k] > 2 * ranks[k + 1]) {
            throw std::invalid_argument("tt_to_circuit: ranks must be powers of two with r_k <= 2 r_(k-1) and "
                                        "r_k <= 2 r_(k+1); apply pad_ranks_pow2 first");
        }
    }

    CircuitPlan plan;
    plan.num_qubits = int(d);
    std::vector<GateOp> forward;
    TTCore carry = tt.core(0);
    for (std::size_t k = 0; k < d; ++k) {
        const Eigen::MatrixXd m = reshape_core(carry);
        const std::size_t L = carry.left();
        const std::size_t R = carry.right();
        Eigen::MatrixXd u;
        if (k + 1 == d) {
            const double norm = m.norm();
            if (!(norm > 0.0) || !std::isfinite(norm)) throw NumericError("tt_to_circuit: tensor has zero norm");
            plan.normalizer = norm;
            u = m / norm;
        } else {
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
            if (svd.info() != Eigen::Success) throw NumericError("tt_to_circuit: SVD failed on core " + std::to_string(k));
            Eigen::VectorXd sv = svd.singularValues();
            const double smax = sv.size() ? sv[0] : 0.0;
            for (Eigen::Index i = 0; i < sv.size(); ++i) {
                if (sv[i] < 1e-12 * smax) sv[i] = 0.0;
            }
            u = svd.matrixU();
            const Eigen::MatrixXd pass = sv.asDiagonal() * svd.matrixV().transpose();
            const TTCore &next = tt.core(k + 1);
            carry = TTCore::from_right_unfolding(pass * next.right_unfolding(), next.mode());
        }
        // u: (2L) x R isometry mapping bond j_k to (i_k, j_{k-1}).
        const int width = 1 + ceil_log2(L);
        const int bond_bits = ceil_log2(R);
        const int fresh = width - bond_bits;
        const Eigen::MatrixXcd full = complete_isometry(u.cast<cd>());
        const Eigen::Index dim = Eigen::Index(1) << width;
        Eigen::MatrixXcd w(dim, dim);
        // The incoming bond sits on the top qubits of the gate; the lowest
        // `fresh` qubits start in |0>.
        Eigen::Index spare = Eigen::Index(R);
        for (Eigen::Index c = 0; c < dim; ++c) {
            if ((c & ((Eigen::Index(1) << fresh) - 1)) == 0) {
                w.col(c) = full.col(c >> fresh);
            } else {
                w.col(c) = full.col(spare++);
            }
        }
        GateOp g;
        g.matrix = std::move(w);
        for (int t = 0; t < width; ++t) g.qubits.push_back(int(k) + 1 - t);
        g.origin = GateOrigin::tt_core;
        g.origin_index = int(k) + 1;
        forward.push_back(std::move(g));
    }
    plan.gates.assign(std::make_move_iterator(forward.rbegin()), std::make_move_iterator(forward.rend()));
    return plan;
}

Eigen::MatrixXcd expand_gate(const GateOp &g, const std::vector<int> &support) {
    const int m = int(support.size());
    const int dim = 1 << m;
    const std::vector<int> tpos = local_positions(g.qubits, support);
    const std::vector<int> cpos = local_positions(g.controls, support);
    int cmask = 0, cval = 0;
    for (std::size_t c = 0; c < cpos.size(); ++c) {
        cmask |= 1 << cpos[c];
        if (g.control_values[c]) cval |= 1 << cpos[c];
    }
    int tmask = 0;
    for (int p : tpos) tmask |= 1 << p;
    const int tdim = 1 << int(g.qubits.size());
    std::vector<int> offsets(static_cast<std::size_t>(tdim));
    for (int l = 0; l < tdim; ++l) offsets[std::size_t(l)] = scatter(l, tpos);

    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (int base = 0; base < dim; ++base) {
        if (base & tmask) continue;
        if ((base & cmask) != cval) {
            for (int l = 0; l < tdim; ++l) out(base | offsets[std::size_t(l)], base | offsets[std::size_t(l)]) = 1.0;
            continue;
        }
        for (int r = 0; r < tdim; ++r)
            for (int c = 0; c < tdim; ++c) out(base | offsets[std::size_t(r)], base | offsets[std::size_t(c)]) = g.matrix(r, c);
    }
    return out;
}

CircuitPlan merge_gates(const CircuitPlan &plan) {
    CircuitPlan out;
    out.num_qubits = plan.num_qubits;
    out.normalizer = plan.normalizer;
    if (plan.gates.empty()) return out;

    GateOp lead = plan.gates.front();
    std::vector<int> lead_support = lead.support();
    bool lead_merged = false;
    Eigen::MatrixXcd acc;

    auto flush = [&] {
        if (lead_merged) {
            GateOp g;
            g.matrix = std::move(acc);
            g.qubits = lead_support;
            g.origin = GateOrigin::merged;
            g.origin_index = lead.origin_index;
            out.gates.push_back(std::move(g));
        } else {
            out.gates.push_back(lead);
        }
    };

    for (std::size_t i = 1; i < plan.gates.size(); ++i) {
        const GateOp &g = plan.gates[i];
        const std::vector<int> s = g.support();
        const bool nested = int(lead_support.size()) <= kMaxMergeWidth &&
                            std::all_of(s.begin(), s.end(), [&](int q) {
                                return std::find(lead_support.begin(), lead_support.end(), q) != lead_support.end();
                            });
        if (nested) {
            if (!lead_merged) {
                acc = expand_gate(lead, lead_support);
                lead_merged = true;
            }
            acc = expand_gate(g, lead_support) * acc;
            continue;
        }
        flush();
        lead = g;
        lead_support = s;
        lead_merged = false;
    }
    flush();
    return out;
}

CircuitPlan grover_rudolph_baseline(std::span<const double> probs) {
    const std::size_t n = probs.size();
    if (n < 2 || !is_power_of_two(n)) throw std::invalid_argument("grover_rudolph_baseline: need 2^q probabilities");
    const int q = ceil_log2(n);
    // mass[k][b]: probability of the k-bit prefix b (qubit 1 most significant).
    std::vector<std::vector<double>> mass(std::size_t(q) + 1);
    mass[std::size_t(q)].assign(probs.begin(), probs.end());
    for (int k = q; k-- > 0;) {
        const auto &below = mass[std::size_t(k) + 1];
        auto &level = mass[std::size_t(k)];
        level.resize(below.size() / 2);
        for (std::size_t b = 0; b < level.size(); ++b) level[b] = below[2 * b] + below[2 * b + 1];
    }

    CircuitPlan plan;
    plan.num_qubits = q;
    plan.normalizer = 1.0;
    for (int k = 1; k <= q; ++k) {
        const auto &parents = mass[std::size_t(k) - 1];
        const auto &children = mass[std::size_t(k)];
        for (std::size_t b = 0; b < parents.size(); ++b) {
            const double total = parents[b];
            double theta = 0.0;
            if (total > 0.0) theta = 2.0 * std::acos(std::sqrt(std::clamp(children[2 * b] / total, 0.0, 1.0)));
            GateOp g;
            g.matrix.resize(2, 2);
            g.matrix << std::cos(theta / 2), -std::sin(theta / 2), std::sin(theta / 2), std::cos(theta / 2);
            g.qubits = {k};
            for (int c = 1; c < k; ++c) {
                g.controls.push_back(c);
                g.control_values.push_back(int((b >> (k - 1 - c)) & 1u));
            }
            g.origin = GateOrigin::baseline_level;
            g.origin_index = k;
            plan.gates.push_back(std::move(g));
        }
    }
    return plan;
}

CircuitPlan grover_rudolph_baseline(const DiscreteDistribution &dd) {
    if (dd.grid().dims() != 1) throw std::invalid_argument("grover_rudolph_baseline: univariate distributions only");
    const auto p = dd.probabilities();
    return grover_rudolph_baseline(p);
}

DepthReport depth_report(const CircuitPlan &plan) {
    DepthReport r;
    r.gate_count = plan.total_gate_count();
    r.depth = plan.depth();
    for (const auto &g : plan.gates) {
        r.max_gate_width = std::max(r.max_gate_width, g.width());
        r.two_level_decomposed_depth_estimate += std::pow(4.0, g.width());
    }
    return r;
}

}  // namespace ttload
