# -*- test-case-name: scopf.methods.test.test_methods -*-

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
Benders decomposition.

The master problem holds the nominal dispatch and the response disjunctions
of every contingency.
For each contingency a linear subproblem pins the post-contingency dispatch
to the master's and finds the least total nodal imbalance under which the
network can carry it.
A positive imbalance ``phi`` with duals ``mu`` of the pinning rows yields the
feasibility cut ``phi + mu^T (gs - gs*) <= 0``.
"""

import numpy as np
from attrs import frozen
from numpy.typing import NDArray

from ..backend import LinearRow, Sense, SolveStatus, newModel
from ..model import DispatchState, Method, PowerSystem, RunConfig, RunReport, RunStatus
from ..ptdf import PtdfBundle
from ._exceptions import MethodError, NonconvergentCut
from ._formulation import MasterProblem, addFlowBlock, modelParameters
from ._run import Observer, RunLog, bestBound, finalDispatch


__all__ = ()


@frozen(kw_only=True)
class FeasibilityCut:
    """
    Subproblem outcome for one contingency: the least total nodal imbalance
    (MW) and its sensitivity to each post-contingency output.
    """

    contingency: int
    imbalance: float
    sensitivity: NDArray

    def row(self, name: str, columns: NDArray, dispatch: NDArray) -> LinearRow:
        """
        The cut ``mu^T gs <= mu^T gs* - phi`` over ``columns``.
        """
        nonzero = np.flatnonzero(self.sensitivity)
        return LinearRow(
            name=name,
            columns=columns[nonzero],
            coefficients=self.sensitivity[nonzero],
            sense=Sense.lessEqual,
            rhs=float(self.sensitivity @ dispatch) - self.imbalance,
        )


def solveSubproblem(
    system: PowerSystem, config: RunConfig, contingency: int, dispatch: NDArray
) -> FeasibilityCut:
    """
    Least total nodal imbalance of the post-contingency ``dispatch`` of
    ``contingency``.
    """
    model = newModel(modelParameters(config), backend=config.backend)
    generation = model.addVariables(
        "gs", system.generatorCount, -np.inf, np.inf
    )
    pins = model.addConstraints(
        "pin",
        generation,
        np.identity(system.generatorCount),
        Sense.equal,
        dispatch,
    )
    block = addFlowBlock(model, system, "sub", generation, imbalance=True)
    assert block.surplus is not None and block.deficit is not None
    slacks = np.concatenate([block.surplus, block.deficit])
    model.setObjective(slacks, np.ones(slacks.size))

    result = model.solve()
    if result.status is not SolveStatus.optimal:
        raise MethodError(
            f"Subproblem for contingency {contingency} failed: "
            f"{result.message or result.status.value}"
        )
    return FeasibilityCut(
        contingency=contingency,
        imbalance=max(0.0, result.objective),
        sensitivity=result.dualsOf(pins),
    )


def solveBD(
    system: PowerSystem,
    config: RunConfig,
    *,
    observer: Observer | None = None,
    bundle: PtdfBundle | None = None,
) -> tuple[DispatchState, RunReport]:
    """
    Solve by Benders decomposition, stopping once every subproblem's
    imbalance is at most the violation tolerance.
    """
    run = RunLog(method=Method.bd, config=config, observer=observer)
    master = MasterProblem.build(system, config)
    for contingency in system.contingencies:
        master.importDisjunctions(contingency)
    run.disjunctionStates = master.disjunctionStates

    while True:
        result = master.solve(run.remainingTime())
        run.checkSolved(result, "master problem")
        dispatch = master.postContingencyDispatch(result)

        cuts = [
            solveSubproblem(system, config, contingency, dispatch[contingency])
            for contingency in sorted(dispatch)
        ]
        violated = [cut for cut in cuts if cut.imbalance > config.epsViolation]
        worst = max((cut.imbalance for cut in cuts), default=0.0)

        rows = []
        for cut in violated:
            s = cut.contingency
            if not np.any(cut.sensitivity):
                raise run.failure(
                    NonconvergentCut,
                    f"Subproblem for contingency {s} has imbalance "
                    f"{cut.imbalance} MW but no sensitivity",
                    RunStatus.error,
                )
            rows.append(
                cut.row(
                    f"benders[{s}][{run.iteration}]",
                    master.postContingency[s],
                    dispatch[s],
                )
            )
        if rows:
            master.model.addRowsIncremental(rows)

        run.record(
            objective=result.objective,
            alpha=worst,
            cutsAdded=len(rows),
            lowerBound=bestBound(result),
            upperBound=None if violated else result.objective,
        )
        if not violated:
            break

    state = finalDispatch(
        system, config, master.nominalDispatch(result), bundle=bundle
    )
    return state, run.report(RunStatus.optimal)
