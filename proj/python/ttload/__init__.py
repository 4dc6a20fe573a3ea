# Copyright 2026 The ttload Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Tensor-train state preparation: fit, compile, simulate and score."""

from ._core import (
    CapacityError,
    CircuitPlan,
    ConfigError,
    Error,
    ExperimentConfig,
    InputFunctionError,
    IoError,
    NumericError,
    RankDeficientError,
    SchemaError,
    TensorTrain,
    compile,
    fidelity,
    fit,
    format_report,
    grover_rudolph_baseline,
    kl_divergence,
    ks_distance,
    run_pipeline,
    sample,
    simulate,
    tt_cross,
    tt_to_circuit,
)

__all__ = [
    "CapacityError",
    "CircuitPlan",
    "ConfigError",
    "Error",
    "ExperimentConfig",
    "InputFunctionError",
    "IoError",
    "NumericError",
    "RankDeficientError",
    "SchemaError",
    "TensorTrain",
    "compile",
    "fidelity",
    "fit",
    "format_report",
    "grover_rudolph_baseline",
    "kl_divergence",
    "ks_distance",
    "run_pipeline",
    "sample",
    "simulate",
    "tt_cross",
    "tt_to_circuit",
]
