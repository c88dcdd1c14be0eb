# Copyright 2026 The cohdisc Authors
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


"""Coherent and incoherent discrimination of quantum channels."""

from ._cohdisc import (
    BoundViolation,
    Error,
    InvalidInput,
    SolverFailure,
    builtin_channel,
    channel_to_json,
    choi,
    load_channel,
    p_coh,
    p_inc,
    p_inc_unc_lb,
    seesaw_coh,
    simulate_example,
    solve_coh,
    sweep_gad,
)

__all__ = [
    "BoundViolation",
    "Error",
    "InvalidInput",
    "SolverFailure",
    "builtin_channel",
    "channel_to_json",
    "choi",
    "load_channel",
    "p_coh",
    "p_inc",
    "p_inc_unc_lb",
    "seesaw_coh",
    "simulate_example",
    "solve_coh",
    "sweep_gad",
]
