# -*- test-case-name: scopf.model.test.test_bounds -*-

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
Bound trace of the primal-heuristic monitor
"""

from collections.abc import Iterator
from enum import Enum
from math import inf, isfinite

from attrs import field, frozen


__all__ = ()


class BoundKind(Enum):
    """
    Source of a bound event.
    """

    ubFromP = "ub_from_p"
    lbFromMaster = "lb_from_master"
    ubFromMaster = "ub_from_master"

    @property
    def isUpper(self) -> bool:
        return self is not BoundKind.lbFromMaster


def _optionalFloat(value: float | None) -> float | None:
    return None if value is None else float(value)


@frozen(kw_only=True)
class BoundEvent:
    """
    A bound on the optimal cost, seen ``wallTime`` seconds into the run.

    Upper bounds from restricted problems carry the percentage ``p`` of
    generators with free response and the relative gap the restricted problem
    was solved to.
    """

    wallTime: float = field(converter=float)
    kind: BoundKind
    value: float = field(converter=float)
    p: float | None = field(default=None, converter=_optionalFloat)
    mipGap: float | None = field(default=None, converter=_optionalFloat)


def _byWallTime(events: tuple[BoundEvent, ...]) -> tuple[BoundEvent, ...]:
    return tuple(sorted(events, key=lambda e: e.wallTime))


@frozen(kw_only=True)
class BoundTrace:
    """
    Merged lower and upper bound events, ordered by wall time.
    """

    events: tuple[BoundEvent, ...] = field(default=(), converter=_byWallTime)

    def __iter__(self) -> Iterator[BoundEvent]:
        return iter(self.events)

    @property
    def lowerBound(self) -> float:
        return max(
            (e.value for e in self.events if not e.kind.isUpper), default=-inf
        )

    @property
    def upperBound(self) -> float:
        return min((e.value for e in self.events if e.kind.isUpper), default=inf)

    @property
    def finalGap(self) -> float:
        """
        Relative gap ``(ub - lb) / ub`` between the best bounds, infinite
        while either bound is unknown.
        """
        lb, ub = self.lowerBound, self.upperBound
        if not (isfinite(lb) and isfinite(ub)):
            return inf
        if ub == 0:
            return 0.0 if lb == 0 else inf
        return (ub - lb) / abs(ub)

    def runningBounds(self) -> list[tuple[float, float, float]]:
        """
        ``(wallTime, lb, ub)`` after each event, with the best bound seen so
        far on each side.
        """
        lb, ub = -inf, inf
        running = []
        for event in self.events:
            if event.kind.isUpper:
                ub = min(ub, event.value)
            else:
                lb = max(lb, event.value)
            running.append((event.wallTime, lb, ub))
        return running
