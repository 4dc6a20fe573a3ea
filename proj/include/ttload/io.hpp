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

#include <string>

#include "ttload/circuit.hpp"
#include "ttload/pipeline.hpp"
#include "ttload/tensor_train.hpp"

namespace ttload {

/// Circuit document:
///   { "num_qubits": int, "normalizer": float, "bit_convention": "qubit1_msb",
///     "gates": [ { "qubits": [int, ...], "matrix": [[[re, im], ...], ...],
///                  "controls": [...], "control_values": [...],
///                  "origin": "tt_core", "origin_index": int } ] }
/// controls, control_values, origin and origin_index are optional on input.
std::string circuit_to_json(const CircuitPlan &plan);
/// Throws SchemaError naming the offending field (e.g. "gates[3].matrix").
CircuitPlan circuit_from_json(const std::string &text);

void export_circuit(const CircuitPlan &plan, const std::string &path);
CircuitPlan import_circuit(const std::string &path);

/// { "cores": [ { "shape": [left, mode, right], "data": [...] } ] }
std::string tt_to_json(const TensorTrain &tt);
TensorTrain tt_from_json(const std::string &text);
void save_tt(const TensorTrain &tt, const std::string &path);
TensorTrain load_tt(const std::string &path);

enum class ReportFormat { csv, json };
ReportFormat report_format_from_string(const std::string &s);

/// Floats carry 17 significant digits; missing optionals are empty cells
/// (CSV) or null (JSON).
std::string format_report(const ExperimentReport &report, ReportFormat format);
void emit_report(const ExperimentReport &report, ReportFormat format, const std::string &path);
ExperimentReport parse_report_csv(const std::string &text);

std::string read_file(const std::string &path);
void write_file(const std::string &path, const std::string &contents);

}  // namespace ttload
