# -*- test-case-name: scopf.methods.test.test_formulation -*-

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
Building blocks shared by the solution methods.

All methods work on the same kind of master problem: the nominal dispatch
``g`` with its DC power flow, plus for each contingency ``s`` a
post-contingency dispatch ``gs[s]`` that meets the total load.
Depending on the method, ``gs[s]`` is tied to ``g`` by the response
disjunctions, by response-limit rows only, and is further constrained by a
power flow block or by dedicated line cuts.
"""

from collections.abc import Collection, Iterable

import numpy as np
from attrs import field, mutable
from numpy.typing import ArrayLike, NDArray
from scipy.sparse import hstack, identity
from twisted.logger import Logger

from ..backend import ModelHandle, ModelParameters, Sense, SolveResult, newModel
from ..model import PowerSystem, RunConfig, fromPerUnit
from ..network import buildAngleToFlow, buildIncidence
from ..ptdf import PtdfBundle, cutName, cutRows
from ..response import bigM, buildDisjunctions


__all__ = ()


log = Logger()


def modelParameters(
    config: RunConfig, *, mipGap: float | None = None
) -> ModelParameters:
    """
    Solver parameters for a model built for ``config``.
    """
    return ModelParameters(
        mipGap=config.mipGap if mipGap is None else mipGap,
        timeLimit=config.timeLimit,
        threads=config.threads,
        seed=config.seed,
    )


@mutable(kw_only=True)
class FlowBlock:
    """
    Columns of one DC power flow: bus angles, line flows and, when nodal
    imbalance is allowed, the surplus and deficit at every bus.
    """

    theta: NDArray
    flows: NDArray
    balanceRows: NDArray
    surplus: NDArray | None = None
    deficit: NDArray | None = None


def addFlowBlock(
    model: ModelHandle,
    system: PowerSystem,
    label: str,
    generation: ArrayLike,
    *,
    imbalance: bool = False,
) -> FlowBlock:
    """
    Add the DC power flow of the dispatch in the ``generation`` columns:
    nodal balance ``B g - A^T f = d``, flows ``f = base * S theta`` with the
    slack angle at 0, and ``|f| <= fmax``.

    With ``imbalance``, nodal balance becomes ``B g - A^T f = d + v+ - v-``
    with nonnegative ``v+`` and ``v-`` at every bus.
    """
    incidence, assignment = buildIncidence(system)
    angleToFlow = buildAngleToFlow(system)
    g = np.asarray(generation, dtype=np.int64)
    busCount = system.busCount
    lineCount = system.lineCount
    capacity = system.lineCapacity

    thetaLower = np.full(busCount, -np.inf)
    thetaUpper = np.full(busCount, np.inf)
    thetaLower[system.slackBus] = thetaUpper[system.slackBus] = 0.0
    theta = model.addVariables(f"theta[{label}]", busCount, thetaLower, thetaUpper)
    flows = model.addVariables(f"f[{label}]", lineCount, -capacity, capacity)

    columns = [g, flows]
    blocks = [assignment, -incidence.T]
    surplus = deficit = None
    if imbalance:
        surplus = model.addVariables(f"surplus[{label}]", busCount)
        deficit = model.addVariables(f"deficit[{label}]", busCount)
        columns += [surplus, deficit]
        blocks += [-identity(busCount), identity(busCount)]

    balanceRows = model.addConstraints(
        f"nodal[{label}]",
        np.concatenate(columns),
        hstack(blocks),
        Sense.equal,
        system.netLoad,
    )
    if lineCount:
        model.addConstraints(
            f"kirchhoff[{label}]",
            np.concatenate([flows, theta]),
            hstack(
                [identity(lineCount), -fromPerUnit(angleToFlow, system.baseMVA)]
            ),
            Sense.equal,
            0.0,
        )
    return FlowBlock(
        theta=theta,
        flows=flows,
        balanceRows=balanceRows,
        surplus=surplus,
        deficit=deficit,
    )


@mutable(kw_only=True)
class MasterProblem:
    """
    Nominal dispatch with its power flow, and the post-contingency dispatch
    of every contingency.

    Contingencies start out with only their post-contingency columns, the
    outage of their own unit and the load balance.
    :meth:`limitResponse`, :meth:`importDisjunctions`, :meth:`addFlowBlock`
    and :meth:`addCuts` tie them further to the nominal dispatch and the
    network.
    """

    system: PowerSystem
    config: RunConfig
    model: ModelHandle
    generation: NDArray
    postContingency: dict[int, NDArray] = field(factory=dict)
    signals: dict[int, int] = field(factory=dict)
    bigM: NDArray = field(init=False)

    def __attrs_post_init__(self) -> None:
        self.bigM = bigM(self.system, self.config.bigMMode)

    @classmethod
    def build(
        cls,
        system: PowerSystem,
        config: RunConfig,
        *,
        responseLimited: bool = False,
    ) -> "MasterProblem":
        """
        Build the master problem, minimizing the nominal generation cost.

        With ``responseLimited``, no post-contingency output may exceed the
        nominal output by more than the unit's response limit.
        """
        model = newModel(modelParameters(config), backend=config.backend)
        generation = model.addVariables(
            "g", system.generatorCount, system.gMin, system.gMax
        )
        model.setObjective(generation, system.cost)
        addFlowBlock(model, system, "nominal", generation)

        master = cls(system=system, config=config, model=model, generation=generation)
        for contingency in system.contingencies:
            master._addPostContingency(contingency)
            if responseLimited:
                master.limitResponse(contingency)
        return master

    @property
    def disjunctionStates(self) -> tuple[int, ...]:
        """
        Contingencies whose disjunctions are in the model, in import order.
        """
        return tuple(self.signals)

    def _addPostContingency(self, contingency: int) -> None:
        system = self.system
        upper = system.gMax.copy()
        upper[contingency] = 0.0
        columns = self.model.addVariables(
            f"gs[{contingency}]", system.generatorCount, 0.0, upper
        )
        self.model.addConstraint(
            f"total[{contingency}]",
            columns,
            np.ones(columns.size),
            Sense.equal,
            system.totalLoad,
        )
        self.postContingency[contingency] = columns

    def limitResponse(self, contingency: int) -> None:
        """
        Add ``gs - g <= gamma * capacity`` for the survivors of
        ``contingency``.
        """
        system = self.system
        survivors = np.flatnonzero(np.arange(system.generatorCount) != contingency)
        gs = self.postContingency[contingency]
        count = survivors.size
        if count == 0:
            return
        self.model.addConstraints(
            f"ramp[{contingency}]",
            np.concatenate([gs[survivors], self.generation[survivors]]),
            hstack([identity(count), -identity(count)]),
            Sense.lessEqual,
            system.responseLimit[survivors],
        )

    def importDisjunctions(
        self, contingency: int, linearUnits: Collection[int] = ()
    ) -> None:
        """
        Tie the post-contingency dispatch of ``contingency`` to the nominal
        dispatch through the response disjunctions.
        """
        if contingency in self.signals:
            return
        signal = self.model.addVariable(f"n[{contingency}]", 0.0, 1.0)
        buildDisjunctions(
            self.model,
            self.system,
            contingency,
            self.bigM,
            generation=self.generation,
            postContingency=self.postContingency[contingency],
            signal=signal,
            linearUnits=linearUnits,
        )
        self.signals[contingency] = signal
        log.debug(
            "Imported response disjunctions for contingency {contingency}",
            contingency=contingency,
        )

    def addFlowBlock(self, contingency: int) -> FlowBlock:
        """
        Add the power flow of the post-contingency dispatch of
        ``contingency``.
        """
        return addFlowBlock(
            self.model,
            self.system,
            f"s{contingency}",
            self.postContingency[contingency],
        )

    def addCuts(
        self, bundle: PtdfBundle, contingency: int, lines: Iterable[int]
    ) -> int:
        """
        Add the dedicated cuts of ``contingency`` for ``lines``, skipping
        pairs already present.
        Returns the number of rows added.
        """
        rows = []
        for line in lines:
            if self.model.hasRow(cutName(contingency, line, "reverse")):
                continue
            rows.extend(
                cutRows(bundle, contingency, line, self.postContingency[contingency])
            )
        if rows:
            self.model.addRowsIncremental(rows)
        return len(rows)

    def solve(self, timeLimit: float) -> SolveResult:
        return self.model.solve(timeLimit=timeLimit)

    def nominalDispatch(self, result: SolveResult) -> NDArray:
        return result.valuesOf(self.generation)

    def postContingencyDispatch(self, result: SolveResult) -> dict[int, NDArray]:
        return {
            contingency: result.valuesOf(columns)
            for contingency, columns in self.postContingency.items()
        }
