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

#include <cstdint>
#include <map>
#include <string>

#include <Eigen/Dense>

#include "ttload/circuit.hpp"

namespace ttload {

/// Memory guard: 2^26 complex doubles is 1 GiB.
inline constexpr int kMaxSimulatedQubits = 26;

/// Amplitudes over 2^d basis states, qubit 1 most significant.
struct StateVector {
    int num_qubits = 0;
    Eigen::VectorXcd amps;

    double norm() const { return amps.norm(); }
};

StateVector zero_state(int num_qubits);

void apply_gate_inplace(StateVector &sv, const GateOp &g);
StateVector apply_gate(StateVector sv, const GateOp &g);

StateVector run(const CircuitPlan &plan);

/// Basis index -> count, from `shots` independent draws of |amps|^2.
using Histogram = std::map<std::uint64_t, std::uint64_t>;

Histogram sample(const StateVector &sv, std::uint64_t shots, std::uint64_t seed);

/// Bitstring of basis index x, qubit 1 first.
std::string bitstring(std::uint64_t x, int num_qubits);

}  // namespace ttload
