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

import json
import math
import os

import numpy as np
import pytest

import ttload

CONFIGS = os.environ.get("TTLOAD_CONFIGS", os.path.join(os.path.dirname(__file__), "..", "..", "configs"))


def random_tt(ranks, modes, seed):
    rng = np.random.default_rng(seed)
    return ttload.TensorTrain([rng.standard_normal((ranks[k], modes[k], ranks[k + 1])) for k in range(len(modes))])


def test_tensor_train_round_trip():
    tt = random_tt([1, 3, 2, 1], [2, 4, 2], 0)
    assert tt.ranks == [1, 3, 2, 1]
    assert tt.modes == [2, 4, 2]
    dense = tt.to_dense()
    assert dense.shape == (2, 4, 2)
    assert tt([1, 2, 0]) == pytest.approx(dense[1, 2, 0])
    assert np.linalg.norm(dense) == pytest.approx(tt.norm())
    back = ttload.TensorTrain.from_json(tt.to_json())
    np.testing.assert_array_equal(back.to_dense(), dense)


def test_cross_recovers_separable_function():
    def f(idx):
        return math.prod(1.0 + 0.1 * i for i in idx)

    tt, report = ttload.tt_cross(f, [2] * 6, max_rank=4, seed=3)
    assert max(tt.ranks) == 1
    assert report["converged"]
    assert report["final_validation_error"] <= 1e-12
    assert tt([1, 0, 1, 0, 1, 0]) == pytest.approx(1.1**3)


def test_compile_simulate_matches_tensor():
    tt = random_tt([1, 2, 4, 2, 1], [2, 2, 2, 2], 1).pad_ranks_pow2()
    plan = ttload.compile(tt)
    assert plan.num_qubits == 4
    assert plan.gate_count == 4
    amps = ttload.simulate(plan)
    expected = tt.to_dense().reshape(-1) / np.linalg.norm(tt.to_dense())
    np.testing.assert_allclose(amps.real, expected, atol=1e-10)
    np.testing.assert_allclose(amps.imag, 0.0, atol=1e-10)
    assert ttload.fidelity(amps, expected) == pytest.approx(1.0, abs=1e-12)
    merged = plan.merged()
    assert merged.depth <= plan.depth
    back = ttload.CircuitPlan.from_json(plan.to_json())
    np.testing.assert_allclose(ttload.simulate(back), amps, atol=1e-14)


def test_sampling_is_seeded():
    tt = random_tt([1, 2, 1], [2, 2], 2)
    plan = ttload.compile(tt)
    a = ttload.sample(plan, 1000, seed=4)
    assert a == ttload.sample(plan, 1000, seed=4)
    assert sum(a.values()) == 1000
    assert all(len(k) == 2 for k in a)


def test_metrics():
    p = [0.25, 0.25, 0.5]
    q = [0.5, 0.25, 0.25]
    assert ttload.kl_divergence(p, p) == 0.0
    assert ttload.kl_divergence(p, q) == pytest.approx(0.25 * math.log(0.5) + 0.5 * math.log(2.0))
    assert ttload.ks_distance(np.cumsum(p), np.cumsum(q)) == pytest.approx(0.25)


def test_baseline_counts():
    probs = np.full(16, 1.0 / 16)
    assert ttload.grover_rudolph_baseline(probs).gate_count == 15


def test_fit_lognormal_and_pipeline():
    cfg = {"seed": 3, "sweep": {"qubits": [4, 6], "repeats": 1}, "compile": {"baseline": True}}
    tt, probs, report = ttload.fit(cfg, 6, seed=9)
    assert probs.shape == (64,)
    assert probs.sum() == pytest.approx(1.0)
    amps = ttload.simulate(ttload.compile(tt))
    assert ttload.fidelity(amps, np.sqrt(probs)) >= 0.999
    assert report["function_evaluations"] > 0

    rows = ttload.run_pipeline(cfg)
    assert [r["qubits_per_dim"] for r in rows] == [4, 6]
    assert all(r["fidelity"] >= 0.999 for r in rows)
    assert [r["baseline_gate_count"] for r in rows] == [15, 63]
    assert ttload.format_report(cfg) == ttload.format_report(json.dumps(cfg))


def test_config_errors():
    with pytest.raises(ttload.ConfigError, match="sede"):
        ttload.ExperimentConfig.parse('{"sede": 1}')
    with pytest.raises(ttload.SchemaError):
        ttload.CircuitPlan.from_json('{"num_qubits": 1, "normalizer": 1, "gates": []}')
    with pytest.raises(ttload.IoError):
        ttload.ExperimentConfig.load("/nonexistent/config.json")
    cfg = ttload.ExperimentConfig.load(os.path.join(CONFIGS, "lognormal_1d.json"))
    assert ttload.ExperimentConfig.parse(cfg.to_json()) == cfg
