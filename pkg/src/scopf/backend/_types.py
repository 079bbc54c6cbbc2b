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
Solver backend data types.
"""

from collections.abc import Mapping
from enum import Enum
from math import inf, isnan
from typing import Any

import numpy as np
from attrs import field, fields, frozen
from numpy.typing import NDArray

from ._exceptions import UnknownParameter, UnknownVariable


__all__ = ()


class VariableKind(Enum):
    """
    Variable domain.
    """

    continuous = "continuous"
    binary = "binary"


class Sense(Enum):
    """
    Constraint sense.
    """

    lessEqual = "<="
    greaterEqual = ">="
    equal = "=="


class SolveStatus(Enum):
    """
    Solve outcome.
    """

    optimal = "optimal_within_gap"
    infeasible = "infeasible"
    timeLimit = "time_limit"
    error = "error"


@frozen(kw_only=True)
class ModelParameters:
    """
    Solver parameters: relative MIP gap, time limit (seconds), thread count
    and random seed.
    """

    mipGap: float = field(default=1e-4, converter=float)
    timeLimit: float = field(default=inf, converter=float)
    threads: int = 1
    seed: int = 0

    @classmethod
    def fromMapping(cls, parameters: Mapping[str, Any]) -> "ModelParameters":
        """
        Parameters from a mapping of attribute names to values.
        """
        known = {a.name for a in fields(cls)}
        unknown = sorted(set(parameters) - known)
        if unknown:
            raise UnknownParameter(
                f"Unknown solver parameters: {', '.join(unknown)}"
            )
        return cls(**parameters)


def _intArray(values: Any) -> NDArray:
    array = np.array(values, dtype=np.int64).ravel()
    array.setflags(write=False)
    return array


def _floatArray(values: Any) -> NDArray:
    array = np.array(values, dtype=float).ravel()
    array.setflags(write=False)
    return array


@frozen(kw_only=True)
class LinearRow:
    """
    Named linear constraint over model columns.
    """

    name: str
    columns: NDArray = field(converter=_intArray, eq=False)
    coefficients: NDArray = field(converter=_floatArray, eq=False)
    sense: Sense
    rhs: float = field(converter=float)


@frozen(kw_only=True)
class SolveResult:
    """
    Result of a solve.

    ``values`` holds one value per model column and ``duals`` one value per
    row (pure LPs only); both are ``None`` when the solver produced no
    solution.
    Duals are derivatives of the objective with respect to the right-hand
    side of each row.
    """

    status: SolveStatus
    objective: float = field(default=float("nan"), converter=float)
    bestBound: float = field(default=float("nan"), converter=float)
    values: NDArray | None = field(default=None, eq=False)
    duals: NDArray | None = field(default=None, eq=False)
    columns: Mapping[str, int] = field(factory=dict, eq=False, repr=False)
    rows: Mapping[str, int] = field(factory=dict, eq=False, repr=False)
    message: str = ""

    @property
    def hasSolution(self) -> bool:
        return self.values is not None

    @property
    def relativeGap(self) -> float:
        """
        Relative distance between objective and best bound.
        """
        if isnan(self.objective) or isnan(self.bestBound):
            return inf
        return abs(self.objective - self.bestBound) / max(abs(self.objective), 1e-10)

    def value(self, name: str) -> float:
        try:
            column = self.columns[name]
        except KeyError:
            raise UnknownVariable(f"No variable named {name!r}") from None
        return float(self.valuesOf(np.array([column]))[0])

    def valuesOf(self, columns: NDArray) -> NDArray:
        """
        Values of the given columns.
        """
        if self.values is None:
            raise UnknownVariable(f"No solution available ({self.status.value})")
        return self.values[np.asarray(columns, dtype=np.int64)]

    def dual(self, name: str) -> float:
        try:
            row = self.rows[name]
        except KeyError:
            raise UnknownVariable(f"No constraint named {name!r}") from None
        return float(self.dualsOf(np.array([row]))[0])

    def dualsOf(self, rows: NDArray) -> NDArray:
        """
        Duals of the given rows.
        """
        if self.duals is None:
            raise UnknownVariable(f"No duals available ({self.status.value})")
        return self.duals[np.asarray(rows, dtype=np.int64)]
