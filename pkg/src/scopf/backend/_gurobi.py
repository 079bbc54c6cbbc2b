# -*- test-case-name: scopf.backend.test.test_gurobi -*-

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
Gurobi solver backend.
"""

from typing import Any

import numpy as np
from attrs import field, mutable
from scipy.sparse import csr_matrix

from ._abc import ModelHandle, RowBlock
from ._exceptions import BackendUnavailable
from ._types import Sense, SolveResult, SolveStatus, VariableKind


try:
    import gurobipy as gp
    from gurobipy import GRB
except ImportError:  # pragma: no cover
    gp = None
    GRB = None


__all__ = ()


def gurobiAvailable() -> bool:
    return gp is not None


@mutable(kw_only=True, eq=False)
class GurobiModel(ModelHandle):
    """
    Model mirrored into a :class:`gurobipy.Model` as it is built.
    """

    _model: Any = field(init=False, default=None)
    _variables: list[Any] = field(init=False, factory=list)
    _constraints: list[Any] = field(init=False, factory=list)

    def __attrs_post_init__(self) -> None:
        if gp is None:
            raise BackendUnavailable("gurobipy is not installed")
        try:
            environment = gp.Env(empty=True)
            environment.setParam("OutputFlag", 0)
            environment.start()
            self._model = gp.Model(env=environment)
        except gp.GurobiError as e:
            raise BackendUnavailable(f"Gurobi is not usable: {e}") from e

    def _variablesAdded(self, start: int, stop: int) -> None:
        lower, upper = self.variableBounds()
        for column in range(start, stop):
            self._variables.append(
                self._model.addVar(
                    lb=lower[column] if np.isfinite(lower[column]) else -GRB.INFINITY,
                    ub=upper[column] if np.isfinite(upper[column]) else GRB.INFINITY,
                    vtype=(
                        GRB.BINARY
                        if self._kinds[column] is VariableKind.binary
                        else GRB.CONTINUOUS
                    ),
                    name=self._names[column],
                )
            )

    def _rowsAdded(self, block: RowBlock, names: list[str]) -> None:
        senses = {
            Sense.lessEqual: GRB.LESS_EQUAL,
            Sense.greaterEqual: GRB.GREATER_EQUAL,
            Sense.equal: GRB.EQUAL,
        }
        rows = csr_matrix(
            (block.values, (block.rowIndex - block.first, block.columnIndex)),
            shape=(block.count, self.variableCount),
        )
        for offset, name in enumerate(names):
            start, stop = rows.indptr[offset], rows.indptr[offset + 1]
            expression = gp.LinExpr(
                rows.data[start:stop].tolist(),
                [self._variables[c] for c in rows.indices[start:stop]],
            )
            self._constraints.append(
                self._model.addLConstr(
                    expression, senses[block.senses[offset]], block.rhs[offset], name
                )
            )

    def _solve(self, timeLimit: float) -> SolveResult:
        model = self._model
        coefficients = self.objectiveVector()
        model.setObjective(
            gp.LinExpr(coefficients.tolist(), self._variables)
            + self._objectiveConstant,
            GRB.MAXIMIZE if self._maximize else GRB.MINIMIZE,
        )
        model.Params.MIPGap = self.parameters.mipGap
        model.Params.Threads = self.parameters.threads
        model.Params.Seed = self.parameters.seed
        if np.isfinite(timeLimit):
            model.Params.TimeLimit = max(timeLimit, 1e-3)

        try:
            model.optimize()
        except gp.GurobiError as e:
            return SolveResult(
                status=SolveStatus.error, message=str(e), **self._resultRegistries()
            )

        code = model.Status
        if code == GRB.OPTIMAL:
            status = SolveStatus.optimal
        elif code in (GRB.INFEASIBLE, GRB.INF_OR_UNBD):
            status = SolveStatus.infeasible
        elif code == GRB.TIME_LIMIT:
            status = SolveStatus.timeLimit
        else:
            status = SolveStatus.error

        values = None
        duals = None
        objective = float("nan")
        bestBound = float("nan")
        if model.SolCount > 0 and self._variables:
            values = np.array(model.getAttr("X", self._variables), dtype=float)
            objective = float(model.ObjVal)
        elif model.SolCount > 0:
            values = np.zeros(0)
            objective = float(model.ObjVal)

        if model.IsMIP:
            if status in (SolveStatus.optimal, SolveStatus.timeLimit):
                bestBound = float(model.ObjBound)
        else:
            bestBound = objective
            if status is SolveStatus.optimal:
                duals = np.array(
                    model.getAttr("Pi", self._constraints) if self._constraints else [],
                    dtype=float,
                )

        return SolveResult(
            status=status,
            objective=objective,
            bestBound=bestBound,
            values=values,
            duals=duals,
            message=f"Gurobi status {code}",
            **self._resultRegistries(),
        )
