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


"""Prospective learning simulations over Gaussian task sequences."""

from prolearn._core import (
    ConfigError,
    DegenerateTaskError,
    GaussianClassTask,
    Learner,
    LinearHypothesis,
    SolverError,
    TaskSequence,
    __version__,
    analytic_risk,
    bayes_hypothesis,
    bayes_risk,
    constant,
    fig3a,
    fig3b,
    mc_risk,
    normal_cdf,
    prospective_score,
    run_config,
    sample,
    validate_config,
    write_outputs,
)

__all__ = [
    "ConfigError",
    "DegenerateTaskError",
    "GaussianClassTask",
    "Learner",
    "LinearHypothesis",
    "SolverError",
    "TaskSequence",
    "__version__",
    "analytic_risk",
    "bayes_hypothesis",
    "bayes_risk",
    "constant",
    "fig3a",
    "fig3b",
    "mc_risk",
    "normal_cdf",
    "prospective_score",
    "run_config",
    "sample",
    "validate_config",
    "write_outputs",
]
