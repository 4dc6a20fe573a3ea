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
#include <vector>

namespace ttload {

// Bit-ordering convention shared by the quantizer, the circuit compiler and
// the simulator. Qubits are labelled 1..d and qubit 1 is the most significant
// bit of a basis-state index, so |i_1 i_2 ... i_d> sits at sum_k i_k 2^(d-k).

/// Position of qubit `qubit` (1-based) counted from the least significant bit.
constexpr int qubit_bit_position(int qubit, int num_qubits) { return num_qubits - qubit; }

constexpr std::uint64_t qubit_mask(int qubit, int num_qubits) {
    return std::uint64_t{1} << qubit_bit_position(qubit, num_qubits);
}

/// Big-endian binary digits (i_1, ..., i_d) of `i`. Throws std::out_of_range
/// unless 0 <= i < 2^d.
std::vector<int> binary_index(std::uint64_t i, int d);

/// Inverse of binary_index.
std::uint64_t index_from_bits(const std::vector<int> &bits);

}  // namespace ttload
