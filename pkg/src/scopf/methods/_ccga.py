# -*- test-case-name: scopf.methods.test.test_ccga -*-

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
Column-and-constraint generation.

The master problem starts without any response disjunctions: each
post-contingency dispatch is only held to the total load and to the
response limit of every unit, which guarantees that a binary search on the
master's nominal dispatch finds a balancing response signal.
Each iteration searches the response to every contingency, screens it,
imports the disjunctions of the contingency with the largest violation and
adds the dedicated cuts of the worst contingency and line pairs.
"""

from collections.abc import Collection

from twisted.logger import Logger

from ..model import DispatchState, Method, PowerSystem, RunConfig, RunReport, RunStatus
from ..ptdf import PtdfBundle, buildCutStructures
from ._exceptions import NonconvergentCut, ResponseInfeasible
from ._formulation import MasterProblem
from ._run import (
    Observer,
    RunLog,
    bestBound,
    finalDispatch,
    respondToAll,
    screenOutcomes,
)


__all__ = ()


log = Logger()


def solveCCGA(
    system: PowerSystem,
    config: RunConfig,
    *,
    linearUnits: Collection[int] = (),
    observer: Observer | None = None,
    bundle: PtdfBundle | None = None,
) -> tuple[DispatchState, RunReport]:
    """
    Solve by column-and-constraint generation.

    Units in ``linearUnits`` always follow their linear response, which
    restricts the problem; its optimal cost is then an upper bound on the
    unrestricted one, and master bounds are not lower bounds.
    """
    if bundle is None:
        bundle = buildCutStructures(system)
    linearUnits = frozenset(linearUnits)
    restricted = bool(linearUnits)

    run = RunLog(method=Method.ccga, config=config, observer=observer)
    master = MasterProblem.build(system, config, responseLimited=True)

    while True:
        result = master.solve(run.remainingTime())
        run.checkSolved(result, "master problem")
        generation = master.nominalDispatch(result)

        outcomes = respondToAll(
            system, generation, config.epsBinary, linearUnits=linearUnits
        )
        unbalanced = sorted(s for s, o in outcomes.items() if not o.converged)
        table = screenOutcomes(bundle, outcomes, config.epsViolation)
        alpha = table.alphaMax

        lowerBound = None if restricted else bestBound(result)

        if alpha < config.epsViolation and not unbalanced:
            run.record(
                objective=result.objective,
                alpha=alpha,
                cutsAdded=0,
                lowerBound=lowerBound,
                upperBound=result.objective,
            )
            log.info(
                "Converged after {iterations} iterations with disjunctions for "
                "{states} of {total} contingencies",
                iterations=run.iteration,
                states=len(master.signals),
                total=len(system.contingencies),
            )
            break

        # A contingency the response cannot balance is the most critical.
        critical = unbalanced[0] if unbalanced else table.argmaxState
        imported = critical is not None and critical not in master.signals
        if critical is not None and imported:
            master.importDisjunctions(critical, linearUnits)
            run.disjunctionStates = master.disjunctionStates
        elif unbalanced:
            raise run.failure(
                ResponseInfeasible,
                f"No response signal balances contingency {critical}",
                RunStatus.infeasible,
                contingency=critical,
            )

        added = 0
        for violation in table:
            s = violation.contingency
            beta = config.beta1 if s in master.signals else config.beta2
            if violation.alpha > alpha / beta:
                added += master.addCuts(bundle, s, [violation.line])

        run.record(
            objective=result.objective,
            alpha=alpha,
            cutsAdded=added,
            lowerBound=lowerBound,
        )
        if not imported and added == 0:
            raise run.failure(
                NonconvergentCut,
                f"Largest violation {alpha} MW persists with all of its "
                f"cuts and disjunctions in place",
                RunStatus.error,
            )

    state = finalDispatch(
        system,
        config,
        generation,
        bundle=bundle,
        outcomes=outcomes,
        linearUnits=linearUnits,
    )
    return state, run.report(RunStatus.optimal)
