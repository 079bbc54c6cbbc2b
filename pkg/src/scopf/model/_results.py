# -*- test-case-name: scopf.model.test.test_results -*-

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
Contingency response, line violations and dispatch results
"""

from collections.abc import Iterable, Iterator
from typing import Any

import numpy as np
from attrs import field, frozen
from numpy.typing import NDArray

from ._arrays import arrayField
from ._exceptions import ModelError
from ._system import PowerSystem


__all__ = ()


@frozen(kw_only=True)
class ResponseOutcome:
    """
    Post-contingency dispatch of one contingency.

    ``signal`` is the global response signal in ``[0, 1]``, ``generation`` the
    post-contingency output of every generator (MW, the outaged unit at 0),
    ``following`` whether each unit follows its linear response (as opposed to
    sitting at its upper limit), and ``imbalance`` the total generation minus
    total load (MW).
    """

    contingency: int
    signal: float = field(converter=float)
    generation: NDArray = arrayField()
    following: NDArray = arrayField(dtype=bool)
    imbalance: float = field(converter=float)
    converged: bool
    iterations: int = 0

    def __attrs_post_init__(self) -> None:
        if not 0 <= self.signal <= 1:
            raise ModelError(
                f"Response signal for contingency {self.contingency} "
                f"must lie in [0, 1], not {self.signal}"
            )
        if self.generation.shape != self.following.shape:
            raise ModelError(
                f"Response for contingency {self.contingency} has "
                f"{self.generation.size} outputs but "
                f"{self.following.size} response flags"
            )


@frozen(kw_only=True, order=True)
class Violation:
    """
    Overload of one line in one contingency state, in MW.
    """

    contingency: int
    line: int
    alpha: float = field(converter=float)

    def __attrs_post_init__(self) -> None:
        if not self.alpha > 0:
            raise ModelError(
                f"Violation of line {self.line} in contingency "
                f"{self.contingency} must be positive, not {self.alpha}"
            )


def _ranked(entries: Iterable[Violation]) -> tuple[Violation, ...]:
    return tuple(sorted(entries, key=lambda v: (-v.alpha, v.contingency, v.line)))


@frozen(kw_only=True)
class ViolationTable:
    """
    Line violations, largest first.
    Equal violations are ordered by contingency id, then line id.
    """

    entries: tuple[Violation, ...] = field(default=(), converter=_ranked)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Violation]:
        return iter(self.entries)

    @property
    def alphaMax(self) -> float:
        """
        Largest violation in MW, 0 when nothing is violated.
        """
        if not self.entries:
            return 0.0
        return self.entries[0].alpha

    @property
    def argmaxState(self) -> int | None:
        """
        Contingency with the largest violation.
        """
        if not self.entries:
            return None
        return self.entries[0].contingency

    @property
    def states(self) -> frozenset[int]:
        return frozenset(v.contingency for v in self.entries)

    def forState(self, contingency: int) -> tuple[Violation, ...]:
        return tuple(v for v in self.entries if v.contingency == contingency)

    def above(self, threshold: float) -> tuple[Violation, ...]:
        """
        Violations strictly larger than ``threshold`` MW.
        """
        return tuple(v for v in self.entries if v.alpha > threshold)


@frozen(kw_only=True)
class DispatchState:
    """
    Nominal dispatch with its response in every contingency.
    """

    generation: NDArray = arrayField()
    outcomes: tuple[ResponseOutcome, ...] = field(converter=tuple)
    objective: float = field(converter=float)
    feasible: bool
    maxViolation: float = field(converter=float)

    def __attrs_post_init__(self) -> None:
        if self.feasible and not all(o.converged for o in self.outcomes):
            raise ModelError(
                "A feasible dispatch must have a converged response "
                "in every contingency"
            )

    @classmethod
    def fromGeneration(
        cls,
        system: PowerSystem,
        generation: Any,
        outcomes: Iterable[ResponseOutcome],
        *,
        maxViolation: float,
        epsViolation: float,
    ) -> "DispatchState":
        """
        Build a dispatch whose objective is the cost of ``generation`` and
        whose feasibility follows from the responses and the largest line
        violation.
        """
        g = np.asarray(generation, dtype=float)
        outcomes = tuple(outcomes)
        return cls(
            generation=g,
            outcomes=outcomes,
            objective=float(system.cost @ g),
            feasible=(
                maxViolation <= epsViolation and all(o.converged for o in outcomes)
            ),
            maxViolation=maxViolation,
        )

    def outcomeFor(self, contingency: int) -> ResponseOutcome:
        for outcome in self.outcomes:
            if outcome.contingency == contingency:
                return outcome
        raise ModelError(f"No response recorded for contingency {contingency}")

    def contingencyGeneration(self) -> dict[int, NDArray]:
        """
        Post-contingency generation vectors keyed by contingency.
        """
        return {o.contingency: o.generation for o in self.outcomes}
