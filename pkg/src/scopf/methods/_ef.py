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
Extensive formulation: one mixed-integer program with the power flow and the
response disjunctions of every contingency.
"""

from twisted.logger import Logger

from ..model import DispatchState, Method, PowerSystem, RunConfig, RunReport, RunStatus
from ..ptdf import PtdfBundle
from ._formulation import MasterProblem
from ._run import Observer, RunLog, bestBound, finalDispatch


__all__ = ()


log = Logger()


def solveEF(
    system: PowerSystem,
    config: RunConfig,
    *,
    observer: Observer | None = None,
    bundle: PtdfBundle | None = None,
) -> tuple[DispatchState, RunReport]:
    """
    Solve the extensive formulation.
    """
    run = RunLog(method=Method.ef, config=config, observer=observer)
    master = MasterProblem.build(system, config)
    for contingency in system.contingencies:
        master.importDisjunctions(contingency)
        master.addFlowBlock(contingency)
    run.disjunctionStates = master.disjunctionStates

    log.info(
        "Extensive formulation: {variables} variables ({binaries} binary), "
        "{rows} rows",
        variables=master.model.variableCount,
        binaries=master.model.binaryCount,
        rows=master.model.rowCount,
    )

    result = master.solve(run.remainingTime())
    run.checkSolved(result, "extensive formulation")

    generation = master.nominalDispatch(result)
    run.record(
        objective=result.objective,
        alpha=0.0,
        cutsAdded=0,
        lowerBound=bestBound(result),
        upperBound=result.objective,
    )
    state = finalDispatch(system, config, generation, bundle=bundle)
    return state, run.report(RunStatus.optimal)
