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

#include "ttload/statevector.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "ttload/bits.hpp"
#include "ttload/errors.hpp"
#include "ttload/rng.hpp"

namespace ttload {

StateVector zero_state(int num_qubits) {
    if (num_qubits < 1) throw std::invalid_argument("zero_state: need at least one qubit");
    if (num_qubits > kMaxSimulatedQubits) {
        throw CapacityError("zero_state: " + std::to_string(num_qubits) + " qubits exceeds the simulator limit of " +
                            std::to_string(kMaxSimulatedQubits));
    }
    StateVector sv;
    sv.num_qubits = num_qubits;
    sv.amps = Eigen::VectorXcd::Zero(Eigen::Index(1) << num_qubits);
    sv.amps[0] = 1.0;
    return sv;
}

void apply_gate_inplace(StateVector &sv, const GateOp &g) {
    const int d = sv.num_qubits;
    for (int q : g.support()) {
        if (q < 1 || q > d) throw std::out_of_range("apply_gate: qubit " + std::to_string(q) + " outside the register");
    }
    const int m = int(g.qubits.size());
    const std::uint64_t tdim = std::uint64_t{1} << m;
    if (std::uint64_t(g.matrix.rows()) != tdim || std::uint64_t(g.matrix.cols()) != tdim) {
        throw std::invalid_argument("apply_gate: matrix size does not match target count");
    }

    std::vector<std::uint64_t> offsets(tdim, 0);
    for (std::uint64_t l = 0; l < tdim; ++l) {
        for (int t = 0; t < m; ++t) {
            if ((l >> (m - 1 - t)) & 1u) offsets[l] |= qubit_mask(g.qubits[std::size_t(t)], d);
        }
    }
    std::vector<int> positions;
    for (int q : g.qubits) positions.push_back(qubit_bit_position(q, d));
    std::sort(positions.begin(), positions.end());
    std::uint64_t cmask = 0, cval = 0;
    for (std::size_t c = 0; c < g.controls.size(); ++c) {
        cmask |= qubit_mask(g.controls[c], d);
        if (g.control_values.at(c)) cval |= qubit_mask(g.controls[c], d);
    }

    Eigen::VectorXcd local(static_cast<Eigen::Index>(tdim)), result(static_cast<Eigen::Index>(tdim));
    const std::uint64_t blocks = std::uint64_t{1} << (d - m);
    for (std::uint64_t r = 0; r < blocks; ++r) {
        // Insert zero bits at the target positions.
        std::uint64_t base = r;
        for (int p : positions) {
            const std::uint64_t low = base & ((std::uint64_t{1} << p) - 1);
            base = ((base >> p) << (p + 1)) | low;
        }
        if ((base & cmask) != cval) continue;
        for (std::uint64_t l = 0; l < tdim; ++l) local[Eigen::Index(l)] = sv.amps[Eigen::Index(base | offsets[l])];
        result.noalias() = g.matrix * local;
        for (std::uint64_t l = 0; l < tdim; ++l) sv.amps[Eigen::Index(base | offsets[l])] = result[Eigen::Index(l)];
    }
}

StateVector apply_gate(StateVector sv, const GateOp &g) {
    apply_gate_inplace(sv, g);
    return sv;
}

StateVector run(const CircuitPlan &plan) {
    StateVector sv = zero_state(plan.num_qubits);
    for (const auto &g : plan.gates) apply_gate_inplace(sv, g);
    return sv;
}

Histogram sample(const StateVector &sv, std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("sample: shots must be >= 1");
    std::vector<double> cdf(std::size_t(sv.amps.size()));
    double acc = 0.0;
    for (Eigen::Index i = 0; i < sv.amps.size(); ++i) cdf[std::size_t(i)] = (acc += std::norm(sv.amps[i]));
    Rng rng(seed);
    Histogram h;
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform01() * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) --it;
        // upper_bound never lands on a zero-probability state.
        ++h[std::uint64_t(it - cdf.begin())];
    }
    return h;
}

std::string bitstring(std::uint64_t x, int num_qubits) {
    std::string s;
    for (int b : binary_index(x, num_qubits)) s.push_back(b ? '1' : '0');
    return s;
}

}  // namespace ttload
