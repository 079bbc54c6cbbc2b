##
# See the file COPYRIGHT for copyright information.
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
##

"""
Solver backends for linear and mixed-integer models
"""

from ._abc import ModelHandle
from ._exceptions import (
    BackendError,
    BackendUnavailable,
    DuplicateName,
    ModelBuildError,
    UnknownParameter,
    UnknownVariable,
)
from ._factory import backendNames, newModel
from ._gurobi import gurobiAvailable
from ._types import (
    LinearRow,
    ModelParameters,
    Sense,
    SolveResult,
    SolveStatus,
    VariableKind,
)


__all__ = (
    "BackendError",
    "BackendUnavailable",
    "DuplicateName",
    "LinearRow",
    "ModelBuildError",
    "ModelHandle",
    "ModelParameters",
    "Sense",
    "SolveResult",
    "SolveStatus",
    "UnknownParameter",
    "UnknownVariable",
    "VariableKind",
    "backendNames",
    "gurobiAvailable",
    "newModel",
)
