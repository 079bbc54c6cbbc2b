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
Per-iteration run reports
"""

from enum import Enum
from math import inf

from attrs import field, frozen

from ._config import Method


__all__ = ()


class RunStatus(Enum):
    """
    Outcome of a method run.
    """

    optimal = "optimal_within_gap"
    infeasible = "infeasible"
    timeLimit = "time_limit"
    error = "error"


def _optionalFloat(value: float | None) -> float | None:
    return None if value is None else float(value)


@frozen(kw_only=True)
class IterationRecord:
    """
    One master iteration: objective, largest violation (MW), cut rows added,
    count of states with disjunctions and the bounds known at that point.
    """

    iteration: int
    wallTime: float = field(converter=float)
    objective: float = field(converter=float)
    alpha: float = field(converter=float)
    cutsAdded: int
    disjunctionCount: int
    lowerBound: float | None = field(default=None, converter=_optionalFloat)
    upperBound: float | None = field(default=None, converter=_optionalFloat)


@frozen(kw_only=True)
class RunReport:
    """
    Iteration log and final status of a method run.
    """

    method: Method
    status: RunStatus
    iterations: tuple[IterationRecord, ...] = field(default=(), converter=tuple)
    disjunctionStates: tuple[int, ...] = field(default=(), converter=tuple)
    wallTime: float = field(default=0.0, converter=float)

    @property
    def objectives(self) -> tuple[float, ...]:
        return tuple(record.objective for record in self.iterations)

    @property
    def totalCuts(self) -> int:
        return sum(record.cutsAdded for record in self.iterations)

    @property
    def lastLowerBound(self) -> float:
        """
        Most recent lower bound recorded, or negative infinity.
        """
        for record in reversed(self.iterations):
            if record.lowerBound is not None:
                return record.lowerBound
        return -inf
