# -*- test-case-name: scopf.bounds.test.test_bounds -*-

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
Bound monitoring with restricted column-and-constraint generation.

Restricting the response disjunctions to a subset ``H`` of the generators
(the others always follow their linear response) gives a problem whose
optimal cost is an upper bound on the optimal cost.
One stream solves such restrictions for growing subsets; another solves the
unrestricted problem, whose master problems give lower bounds as it goes.
"""

from collections.abc import Callable
from math import floor, inf
from typing import Any

from twisted.logger import Logger

from ..ext.parallel import Clock, EventRecorder, runInThreads
from ..methods import Infeasible, ResponseInfeasible, solveCCGA
from ..model import (
    BoundEvent,
    BoundKind,
    BoundTrace,
    ConfigurationError,
    IterationRecord,
    PowerSystem,
    RunConfig,
)
from ..ptdf import PtdfBundle, buildCutStructures


__all__ = ()


log = Logger()


def selectH(system: PowerSystem, p: float) -> frozenset[int]:
    """
    The ``p`` percent of generators (rounded half up) with the lowest ratio
    of cost to upper limit.
    Ties go to the lower generator id; generators with no upper limit rank
    last.
    """
    if not 0 <= p <= 100:
        raise ConfigurationError(f"Percentage must lie in [0, 100], not {p}")

    count = floor(p * system.generatorCount / 100 + 0.5)

    unlimited = [g.id for g in system.generators if g.gMax <= 0]
    if unlimited:
        log.warn(
            "Generators without an upper limit rank last: {generators}",
            generators=unlimited,
        )
    ranked = sorted(
        (g for g in system.generators if g.gMax > 0),
        key=lambda g: (g.cost / g.gMax, g.id),
    )
    order = [g.id for g in ranked] + sorted(unlimited)
    return frozenset(order[:count])


def _guarded(name: str, stream: Callable[[], None]) -> Callable[[], None]:
    def run() -> None:
        try:
            stream()
        except Exception:
            log.failure("Bound stream {stream} failed", stream=name)

    return run


async def runBounds(
    system: PowerSystem,
    config: RunConfig,
    *,
    bundle: PtdfBundle | None = None,
) -> BoundTrace:
    """
    Run the restricted problems of ``config.pSchedule`` and the unrestricted
    problem concurrently, collecting the bounds each one yields.

    A restriction with no feasible dispatch bounds the cost by infinity.
    A stream that fails yields no further bounds; the other carries on.
    """
    if bundle is None:
        bundle = buildCutStructures(system)
    clock = Clock()
    recorder: EventRecorder[BoundEvent] = EventRecorder()
    everyone = frozenset(range(system.generatorCount))

    def emit(kind: BoundKind, value: float, **details: Any) -> None:
        event = BoundEvent(
            wallTime=clock.elapsed(), kind=kind, value=value, **details
        )
        log.info(
            "{kind} at {wallTime:.3f}s: {value}",
            kind=kind.value,
            wallTime=event.wallTime,
            value=value,
        )
        recorder.append(event)

    def restricted() -> None:
        for p in config.pSchedule:
            linearUnits = everyone - selectH(system, p)
            try:
                state, _ = solveCCGA(
                    system, config, linearUnits=linearUnits, bundle=bundle
                )
            except (Infeasible, ResponseInfeasible) as e:
                log.info(
                    "Restriction to {p}% of generators has no dispatch: "
                    "{message}",
                    p=p,
                    message=e.message,
                )
                value = inf
            else:
                value = state.objective if state.feasible else inf
            emit(BoundKind.ubFromP, value, p=p, mipGap=config.mipGap)

    def lowerBound(record: IterationRecord) -> None:
        if record.lowerBound is not None:
            emit(BoundKind.lbFromMaster, record.lowerBound)

    def unrestricted() -> None:
        state, _ = solveCCGA(system, config, observer=lowerBound, bundle=bundle)
        if state.feasible:
            emit(BoundKind.ubFromMaster, state.objective, p=100, mipGap=config.mipGap)

    await runInThreads(
        _guarded("restricted", restricted), _guarded("unrestricted", unrestricted)
    )

    trace = BoundTrace(events=recorder.snapshot())
    log.info(
        "Bounds: lower {lb}, upper {ub}, gap {gap}",
        lb=trace.lowerBound,
        ub=trace.upperBound,
        gap=trace.finalGap,
    )
    return trace
