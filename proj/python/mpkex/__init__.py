# Copyright 2026 The mpkex Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Multivariate polynomial key exchange with keys restricted to Z_p^n."""

from ._mpkex import (
    Error,
    Params,
    clopper_pearson,
    comm_cost,
    failure_bound,
    is_prime,
    monte_carlo,
    roots_in_subrange,
    run_attempt,
    run_session,
    security_estimate,
    transcript_bytes,
)

__all__ = [
    "Error",
    "Params",
    "clopper_pearson",
    "comm_cost",
    "failure_bound",
    "is_prime",
    "monte_carlo",
    "roots_in_subrange",
    "run_attempt",
    "run_session",
    "security_estimate",
    "transcript_bytes",
]
