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
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ttload/quantizer.hpp"
#include "ttload/tensor_train.hpp"

namespace ttload {

enum class GateOrigin { tt_core, merged, baseline_level };

std::string to_string(GateOrigin o);
GateOrigin gate_origin_from_string(const std::string &s);

/// A unitary acting on `qubits` (first entry is the most significant bit of
/// the matrix's local index), optionally conditioned on control qubits
/// holding fixed values.
struct GateOp {
    Eigen::MatrixXcd matrix;
    std::vector<int> qubits;
    std::vector<int> controls;
    std::vector<int> control_values;
    GateOrigin origin = GateOrigin::tt_core;
    /// Core index k (1-based) for tt_core gates, level for baseline gates.
    int origin_index = 0;

    /// Target and control qubits together.
    int width() const { return int(qubits.size() + controls.size()); }
    std::vector<int> support() const;
};

/// Gates in application order: the first element acts first on |0...0>.
struct CircuitPlan {
    int num_qubits = 0;
    std::vector<GateOp> gates;
    /// Norm of the encoded tensor; the prepared state is A / normalizer.
    double normalizer = 1.0;

    std::size_t total_gate_count() const { return gates.size(); }
    /// Longest chain of gates whose supports overlap, in list order.
    std::size_t depth() const;
};

struct DepthReport {
    std::size_t gate_count = 0;
    std::size_t depth = 0;
    int max_gate_width = 0;
    /// sum over gates of 4^width; a coarse proxy for the cost of lowering each
    /// gate to one- and two-qubit operations.
    double two_level_decomposed_depth_estimate = 0.0;
};

inline constexpr double kUnitarityTol = 1e-10;

/// max |W^dagger W - I|.
double unitarity_error(const Eigen::MatrixXcd &w);

/// Checks qubit ranges, matrix size and unitarity; throws std::invalid_argument.
void validate_gate(const GateOp &g, int num_qubits);
void validate_plan(const CircuitPlan &plan);

/// Core (L, 2, R) as a 2L x R matrix with rows (i, j), i most significant.
Eigen::MatrixXd reshape_core(const TTCore &core);

/// Extends an m x n isometry to an m x m unitary whose first n columns are the
/// input, by modified Gram-Schmidt over canonical basis vectors. Throws
/// NumericError when the columns are not orthonormal to 1e-10.
Eigen::MatrixXcd complete_isometry(const Eigen::MatrixXcd &isometry);

/// Compiles a tensor train of amplitudes into d gates. Requires mode sizes 2,
/// power-of-two ranks <= chi_cap and r_k <= 2 r_{k-1}, r_k <= 2 r_{k+1}
/// (see pad_ranks_pow2). Throws std::invalid_argument otherwise.
CircuitPlan tt_to_circuit(const TensorTrain &tt, std::size_t chi_cap);

/// Gates wider than this are never produced by merging.
inline constexpr int kMaxMergeWidth = 10;

/// Folds every gate whose support lies inside the support of the current
/// leading gate into that gate.
CircuitPlan merge_gates(const CircuitPlan &plan);

/// Conditional-probability rotation tree for a univariate distribution:
/// 2^(k-1) controlled RY gates on level k, 2^q - 1 in total.
CircuitPlan grover_rudolph_baseline(const DiscreteDistribution &dd);
CircuitPlan grover_rudolph_baseline(std::span<const double> probs);

DepthReport depth_report(const CircuitPlan &plan);

/// Dense matrix of `g` on the ordered qubit list `support` (first entry most
/// significant). `support` must contain every qubit of g.
Eigen::MatrixXcd expand_gate(const GateOp &g, const std::vector<int> &support);

}  // namespace ttload
