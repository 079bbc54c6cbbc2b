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
Benders decomposition with dedicated cuts.
"""

from ..model import DispatchState, Method, PowerSystem, RunConfig, RunReport, RunStatus
from ..ptdf import PtdfBundle, buildCutStructures, screen
from ._exceptions import NonconvergentCut
from ._formulation import MasterProblem
from ._run import Observer, RunLog, bestBound, finalDispatch


__all__ = ()


def solveBDDC(
    system: PowerSystem,
    config: RunConfig,
    *,
    observer: Observer | None = None,
    bundle: PtdfBundle | None = None,
) -> tuple[DispatchState, RunReport]:
    """
    Solve the master problem of Benders decomposition, screening each of its
    solutions against every line and adding the dedicated cuts of each
    contingency and line violated by more than ``alpha / beta1``, until the
    largest violation ``alpha`` is below the violation tolerance.
    """
    if bundle is None:
        bundle = buildCutStructures(system)

    run = RunLog(method=Method.bddc, config=config, observer=observer)
    master = MasterProblem.build(system, config)
    for contingency in system.contingencies:
        master.importDisjunctions(contingency)
    run.disjunctionStates = master.disjunctionStates

    while True:
        result = master.solve(run.remainingTime())
        run.checkSolved(result, "master problem")

        table = screen(
            bundle,
            master.postContingencyDispatch(result),
            balanceTolerance=config.epsViolation,
        )
        alpha = table.alphaMax
        converged = alpha < config.epsViolation

        added = 0
        if not converged:
            for violation in table.above(alpha / config.beta1):
                added += master.addCuts(
                    bundle, violation.contingency, [violation.line]
                )

        run.record(
            objective=result.objective,
            alpha=alpha,
            cutsAdded=added,
            lowerBound=bestBound(result),
            upperBound=result.objective if converged else None,
        )
        if converged:
            break
        if added == 0:
            raise run.failure(
                NonconvergentCut,
                f"Largest violation {alpha} MW persists with all of its "
                f"cuts in place",
                RunStatus.error,
            )

    state = finalDispatch(
        system, config, master.nominalDispatch(result), bundle=bundle
    )
    return state, run.report(RunStatus.optimal)
