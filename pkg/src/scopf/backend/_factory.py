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
Solver backend selection.
"""

from collections.abc import Mapping
from typing import Any

from twisted.logger import Logger

from ._abc import ModelHandle
from ._exceptions import BackendUnavailable
from ._gurobi import GurobiModel
from ._highs import HiGHSModel
from ._types import ModelParameters


__all__ = ()


log = Logger()

backendNames = ("highs", "gurobi")


def newModel(
    parameters: ModelParameters | Mapping[str, Any] | None = None,
    *,
    backend: str = "highs",
) -> ModelHandle:
    """
    Create an empty model on the named backend.
    """
    if parameters is None:
        parameters = ModelParameters()
    elif not isinstance(parameters, ModelParameters):
        parameters = ModelParameters.fromMapping(parameters)

    name = backend.lower()
    if name == "highs":
        return HiGHSModel(parameters=parameters)
    if name == "gurobi":
        return GurobiModel(parameters=parameters)

    log.error("Unknown solver backend: {backend}", backend=backend)
    raise BackendUnavailable(
        f"Unknown solver backend {backend!r}; expected one of: "
        f"{', '.join(backendNames)}"
    )
