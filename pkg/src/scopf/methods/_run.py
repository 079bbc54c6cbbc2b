# -*- test-case-name: scopf.methods.test.test_run -*-

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
Iteration bookkeeping and final dispatch assembly shared by the methods.
"""

from collections.abc import Callable, Collection, Mapping
from math import inf, isfinite
from typing import Any

import numpy as np
from attrs import Factory, field, mutable
from numpy.typing import ArrayLike
from twisted.logger import Logger

from ..backend import SolveResult, SolveStatus
from ..ext.parallel import Clock
from ..model import (
    DispatchState,
    IterationRecord,
    Method,
    PowerSystem,
    ResponseOutcome,
    RunConfig,
    RunReport,
    RunStatus,
    ViolationTable,
)
from ..ptdf import PtdfBundle, buildCutStructures, screen
from ..response import binarySearch
from ._exceptions import Infeasible, MethodError, TimeLimit


__all__ = ()


log = Logger()


Observer = Callable[[IterationRecord], None]

# Solver feasibility slack (relative to the total load) within which a
# dispatch computed by a solver is still taken to balance.
solverBalanceTolerance = 1e-6


@mutable(kw_only=True)
class RunLog:
    """
    Iteration records of one method run.
    """

    method: Method
    config: RunConfig
    observer: Observer | None = None
    clock: Clock = Factory(Clock)
    records: list[IterationRecord] = Factory(list)
    disjunctionStates: tuple[int, ...] = field(default=(), converter=tuple)

    @property
    def iteration(self) -> int:
        return len(self.records)

    def remainingTime(self) -> float:
        """
        Seconds left of the configured time limit.
        Raises :exc:`TimeLimit` once the time or iteration limit is used up.
        """
        if self.iteration >= self.config.maxIterations:
            raise self.failure(
                TimeLimit,
                f"No convergence after {self.iteration} iterations",
                RunStatus.timeLimit,
            )
        if not self.config.hasTimeLimit:
            return inf
        remaining = self.config.timeLimit - self.clock.elapsed()
        if remaining <= 0:
            raise self.failure(
                TimeLimit,
                f"Time limit of {self.config.timeLimit} seconds reached",
                RunStatus.timeLimit,
            )
        return remaining

    def record(
        self,
        *,
        objective: float,
        alpha: float,
        cutsAdded: int,
        lowerBound: float | None = None,
        upperBound: float | None = None,
    ) -> IterationRecord:
        record = IterationRecord(
            iteration=self.iteration,
            wallTime=self.clock.elapsed(),
            objective=objective,
            alpha=alpha,
            cutsAdded=cutsAdded,
            disjunctionCount=len(self.disjunctionStates),
            lowerBound=lowerBound,
            upperBound=upperBound,
        )
        self.records.append(record)
        log.info(
            "{method} iteration {iteration}: objective {objective:.6f}, "
            "largest violation {alpha:.6g} MW, {cuts} rows added, "
            "{states} states with disjunctions",
            method=self.method.value,
            iteration=record.iteration,
            objective=record.objective,
            alpha=record.alpha,
            cuts=record.cutsAdded,
            states=record.disjunctionCount,
        )
        if self.observer is not None:
            self.observer(record)
        return record

    def report(self, status: RunStatus) -> RunReport:
        return RunReport(
            method=self.method,
            status=status,
            iterations=self.records,
            disjunctionStates=self.disjunctionStates,
            wallTime=self.clock.elapsed(),
        )

    def failure(
        self,
        errorType: type[MethodError],
        message: str,
        status: RunStatus,
        **details: Any,
    ) -> MethodError:
        log.warn(
            "{method} stopped: {message}", method=self.method.value, message=message
        )
        return errorType(message, report=self.report(status), **details)

    def checkSolved(self, result: SolveResult, what: str) -> None:
        """
        Raise the method error matching an unsuccessful solve.
        """
        if result.status is SolveStatus.optimal and result.hasSolution:
            return
        if result.status is SolveStatus.infeasible:
            raise self.failure(
                Infeasible, f"The {what} is infeasible", RunStatus.infeasible
            )
        if result.status is SolveStatus.timeLimit:
            gap = ""
            if result.hasSolution and isfinite(result.relativeGap):
                gap = f" with a relative gap of {result.relativeGap:.4%}"
            raise self.failure(
                TimeLimit,
                f"Time limit reached while solving the {what}{gap}",
                RunStatus.timeLimit,
            )
        raise self.failure(
            MethodError,
            f"Solving the {what} failed: {result.message or result.status.value}",
            RunStatus.error,
        )


def searchResponse(
    system: PowerSystem,
    generation: ArrayLike,
    contingency: int,
    epsBinary: float,
    *,
    linearUnits: Collection[int] = (),
) -> ResponseOutcome:
    """
    Response to ``contingency`` for a nominal dispatch computed by a solver.

    A dispatch that misses balance only by the solver's feasibility slack is
    searched again with that slack as the tolerance.
    """
    outcome = binarySearch(
        system, generation, contingency, epsBinary, linearUnits=linearUnits
    )
    slack = solverBalanceTolerance * max(1.0, system.totalLoad)
    if outcome.converged or abs(outcome.imbalance) > slack or slack <= epsBinary:
        return outcome

    log.debug(
        "Contingency {contingency}: response off by {imbalance} MW, "
        "within solver tolerance",
        contingency=contingency,
        imbalance=outcome.imbalance,
    )
    return binarySearch(system, generation, contingency, slack, linearUnits=linearUnits)


def respondToAll(
    system: PowerSystem,
    generation: ArrayLike,
    epsBinary: float,
    *,
    linearUnits: Collection[int] = (),
) -> dict[int, ResponseOutcome]:
    """
    Response to every contingency, keyed by contingency in ascending order.
    """
    return {
        contingency: searchResponse(
            system, generation, contingency, epsBinary, linearUnits=linearUnits
        )
        for contingency in sorted(system.contingencies)
    }


def screenOutcomes(
    bundle: PtdfBundle, outcomes: Mapping[int, ResponseOutcome], epsViolation: float
) -> ViolationTable:
    """
    Screen the post-contingency dispatch of every converged outcome.
    """
    return screen(
        bundle,
        {s: o.generation for s, o in outcomes.items() if o.converged},
        balanceTolerance=epsViolation,
    )


def finalDispatch(
    system: PowerSystem,
    config: RunConfig,
    generation: ArrayLike,
    *,
    bundle: PtdfBundle | None = None,
    outcomes: Mapping[int, ResponseOutcome] | None = None,
    linearUnits: Collection[int] = (),
) -> DispatchState:
    """
    Dispatch state of a nominal dispatch: the response to every contingency
    from a binary search, screened against every line.
    """
    g = np.asarray(generation, dtype=float)
    if bundle is None:
        bundle = buildCutStructures(system)
    if outcomes is None:
        outcomes = respondToAll(system, g, config.epsBinary, linearUnits=linearUnits)

    table = screenOutcomes(bundle, outcomes, config.epsViolation)
    nominalOverload = np.abs(bundle.flows(g)) - bundle.capacity
    maxViolation = max(table.alphaMax, float(nominalOverload.max(initial=0.0)))

    state = DispatchState.fromGeneration(
        system,
        g,
        outcomes.values(),
        maxViolation=maxViolation,
        epsViolation=config.epsViolation,
    )
    log.info(
        "Dispatch cost {objective:.6f}, largest violation {alpha:.6g} MW, "
        "feasible: {feasible}",
        objective=state.objective,
        alpha=state.maxViolation,
        feasible=state.feasible,
    )
    return state


def masterLowerBound(report: RunReport) -> float:
    """
    Lower bound on the optimal cost from the latest master problem of a run.
    Negative infinity if no master recorded a bound.
    """
    return report.lastLowerBound


def bestBound(result: SolveResult) -> float | None:
    bound = result.bestBound
    if np.isnan(bound) or bound == -inf:
        return None
    return float(bound)

