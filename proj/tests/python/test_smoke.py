# Copyright 2026 The prolearn Authors. All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Smoke tests for the Python bindings."""

import json
import math

import pytest

import prolearn

PHI_MINUS_SQRT2 = 0.07864960352514256532938968245869537035197


def test_version():
    assert prolearn.__version__ == "0.1.0"


def test_bayes_risk_of_task_a():
    seq = prolearn.fig3a()
    task = seq.task_at(0)
    assert abs(prolearn.bayes_risk(task) - PHI_MINUS_SQRT2) < 1e-12
    h = prolearn.bayes_hypothesis(task)
    assert h.w == [2.0, 2.0]
    assert h.b == 0.0


def test_flip_identity():
    seq = prolearn.fig3a()
    h = prolearn.LinearHypothesis([0.4, -1.1], 0.2)
    total = prolearn.analytic_risk(h, seq.task_at(0)) + prolearn.analytic_risk(h, seq.task_at(500))
    assert total == pytest.approx(1.0, abs=1e-15)


def test_mc_risk_agrees_with_analytic():
    task = prolearn.fig3b().task_at(0)
    h = prolearn.LinearHypothesis([1.0, 0.0])
    exact = prolearn.analytic_risk(h, task)
    assert exact == pytest.approx(prolearn.normal_cdf(-1.0), abs=1e-15)
    n = 200000
    est = prolearn.mc_risk(h, task, n, seed=3)
    assert abs(est - exact) < 3 * math.sqrt(exact * (1 - exact) / n)


def test_custom_task_and_sequence():
    t = prolearn.GaussianClassTask([1.0, 0.0], [-1.0, 0.0], sigma=2.0, prior_pos=0.4)
    seq = prolearn.TaskSequence([t, t.flip()], 10, ["P", "Q"])
    assert seq.phase_name(10) == "Q"
    assert seq.task_at(15).flipped
    with pytest.raises(prolearn.ConfigError):
        prolearn.GaussianClassTask([0, 0], [1, 1], sigma=0.0)
    with pytest.raises(prolearn.ConfigError):
        prolearn.TaskSequence([t], 0)


def test_sample_is_deterministic():
    task = prolearn.fig3a().task_at(0)
    assert prolearn.sample(task, 5, seed=1) == prolearn.sample(task, 5, seed=1)


def test_learner_observe_and_checkpoint():
    seq = prolearn.fig3a()
    learner = prolearn.Learner("oracle_prospective", seq)
    task_samples = prolearn.sample(seq.task_at(0), 300, seed=2)
    for t, (x, y) in enumerate(task_samples):
        learner.observe(t, x, y)
    risk = prolearn.analytic_risk(learner.hypothesis_at(300), seq.task_at(0))
    assert risk < PHI_MINUS_SQRT2 + 0.03
    restored = prolearn.Learner.restore(learner.checkpoint(), seq)
    assert restored.kind == "oracle_prospective"
    assert restored.checkpoint() == learner.checkpoint()
    frozen = learner.emit(299, 302)
    assert len(frozen) == 3
    with pytest.raises(prolearn.ConfigError):
        learner.observe(301, [0.0, 0.0], 0)
    with pytest.raises(prolearn.ConfigError):
        prolearn.Learner("sgd", seq)


def test_prospective_score_reference_passes():
    rep = prolearn.prospective_score("reference", prolearn.fig3a(), t_prime=200,
                                     horizon_T=700, n_trials=2)
    assert rep["verdict"] is True
    assert rep["score"] == 1.0
    assert rep["protocol"] == "frozen"


def test_validate_config_errors():
    resolved = json.loads(prolearn.validate_config('{"learners": ["ogd"], "seeds": [1]}'))
    assert resolved["learners"][0]["eta"] == 0.05
    with pytest.raises(prolearn.ConfigError, match="period must be positive"):
        prolearn.validate_config('{"period": 0, "learners": ["ogd"]}')


def test_run_config_streaming(tmp_path):
    text = json.dumps({"scenario": "fig3a", "horizon": 600, "learners": ["ogd"], "seeds": [1, 2]})
    out = prolearn.run_config(text)
    assert len(out["runs"]) == 2
    assert len(out["runs"][0]["risk"]) == 600
    assert max(out["runs"][0]["risk"][500:510]) > 0.5
    files = prolearn.write_outputs(text, tmp_path)
    names = {p.name for p in files}
    assert {"config.json", "trace_seed1.csv", "band_ogd.csv", "run_info.json"} <= names
    header = (tmp_path / "trace_seed1.csv").read_text().splitlines()[0]
    assert header == "t,learner,task,risk,risk_gap"
