# -*- test-case-name: scopf.backend.test.test_highs -*-

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
HiGHS solver backend through :mod:`scipy.optimize`.

Pure LPs are solved with :func:`scipy.optimize.linprog`, which reports row
duals; models with binary variables go through :func:`scipy.optimize.milp`.
"""

from math import isfinite
from typing import Any

import numpy as np
from attrs import mutable
from numpy.typing import NDArray
from scipy.optimize import Bounds, LinearConstraint, linprog, milp
from scipy.sparse import csr_matrix, vstack

from ._abc import ModelHandle
from ._types import Sense, SolveResult, SolveStatus


__all__ = ()


_highsStatus = {
    0: SolveStatus.optimal,
    1: SolveStatus.timeLimit,
    2: SolveStatus.infeasible,
    3: SolveStatus.error,
    4: SolveStatus.error,
}


@mutable(kw_only=True, eq=False)
class HiGHSModel(ModelHandle):
    """
    Model solved by HiGHS.

    HiGHS as bundled with scipy runs single-threaded with its own seed, so
    the ``threads`` and ``seed`` parameters are accepted and ignored.
    """

    def _options(self, timeLimit: float) -> dict[str, Any]:
        options: dict[str, Any] = {"disp": False, "presolve": True}
        if isfinite(timeLimit):
            options["time_limit"] = max(timeLimit, 1e-3)
        return options

    def _rowBounds(self, senses: list[Sense], rhs: NDArray) -> tuple[NDArray, NDArray]:
        isLess = np.array([s is Sense.lessEqual for s in senses], dtype=bool)
        isGreater = np.array([s is Sense.greaterEqual for s in senses], dtype=bool)
        lower = np.where(isLess, -np.inf, rhs)
        upper = np.where(isGreater, np.inf, rhs)
        return lower, upper

    def _solve(self, timeLimit: float) -> SolveResult:
        sign = -1.0 if self._maximize else 1.0
        c = sign * self.objectiveVector()
        matrix = self.constraintMatrix()
        senses = self.rowSenses()
        rhs = self.rowRightHandSides()
        lower, upper = self.variableBounds()

        if self.variableCount == 0:
            return self._solveEmpty(senses, rhs)

        if self.binaryCount == 0:
            return self._solveLP(c, sign, matrix, senses, rhs, lower, upper, timeLimit)

        rowLower, rowUpper = self._rowBounds(senses, rhs)
        constraints = (
            LinearConstraint(matrix, rowLower, rowUpper) if self.rowCount else None
        )
        options = self._options(timeLimit)
        options["mip_rel_gap"] = self.parameters.mipGap

        result = milp(
            c,
            integrality=self.integrality(),
            bounds=Bounds(lower, upper),
            constraints=constraints,
            options=options,
        )
        status = _highsStatus.get(result.status, SolveStatus.error)

        values = None if result.x is None else np.asarray(result.x, dtype=float)
        objective = float("nan")
        bestBound = float("nan")
        if values is not None:
            objective = sign * float(result.fun) + self._objectiveConstant
        dualBound = getattr(result, "mip_dual_bound", None)
        if dualBound is not None and np.isfinite(dualBound):
            bestBound = sign * float(dualBound) + self._objectiveConstant
        elif status is SolveStatus.optimal:
            bestBound = objective

        return SolveResult(
            status=status,
            objective=objective,
            bestBound=bestBound,
            values=values,
            message=str(result.message),
            **self._resultRegistries(),
        )

    def _solveLP(
        self,
        c: NDArray,
        sign: float,
        matrix: csr_matrix,
        senses: list[Sense],
        rhs: NDArray,
        lower: NDArray,
        upper: NDArray,
        timeLimit: float,
    ) -> SolveResult:
        less = np.flatnonzero([s is Sense.lessEqual for s in senses])
        greater = np.flatnonzero([s is Sense.greaterEqual for s in senses])
        equal = np.flatnonzero([s is Sense.equal for s in senses])

        inequalities = less.size + greater.size
        aUpper = bUpper = aEqual = bEqual = None
        if inequalities:
            aUpper = vstack([matrix[less], -matrix[greater]]).tocsr()
            bUpper = np.concatenate([rhs[less], -rhs[greater]])
        if equal.size:
            aEqual = matrix[equal]
            bEqual = rhs[equal]

        options = self._options(timeLimit)
        result = linprog(
            c,
            A_ub=aUpper,
            b_ub=bUpper,
            A_eq=aEqual,
            b_eq=bEqual,
            bounds=np.column_stack([lower, upper]),
            method="highs",
            options=options,
        )
        status = _highsStatus.get(result.status, SolveStatus.error)

        values = None
        duals = None
        objective = float("nan")
        if result.x is not None and status in (
            SolveStatus.optimal,
            SolveStatus.timeLimit,
        ):
            values = np.asarray(result.x, dtype=float)
            objective = sign * float(result.fun) + self._objectiveConstant

        if status is SolveStatus.optimal:
            duals = np.zeros(self.rowCount)
            if inequalities:
                marginals = np.asarray(result.ineqlin.marginals, dtype=float)
                duals[less] = marginals[: less.size]
                duals[greater] = -marginals[less.size :]
            if equal.size:
                duals[equal] = np.asarray(result.eqlin.marginals, dtype=float)
            duals *= sign

        return SolveResult(
            status=status,
            objective=objective,
            bestBound=objective,
            values=values,
            duals=duals,
            message=str(result.message),
            **self._resultRegistries(),
        )

    def _solveEmpty(self, senses: list[Sense], rhs: NDArray) -> SolveResult:
        # Every row reads 0 (sense) rhs.
        satisfied = all(
            (sense is Sense.lessEqual and 0 <= value)
            or (sense is Sense.greaterEqual and 0 >= value)
            or (sense is Sense.equal and value == 0)
            for sense, value in zip(senses, rhs, strict=True)
        )
        if not satisfied:
            return SolveResult(
                status=SolveStatus.infeasible,
                message="Empty model with an unsatisfiable row",
                **self._resultRegistries(),
            )
        return SolveResult(
            status=SolveStatus.optimal,
            objective=self._objectiveConstant,
            bestBound=self._objectiveConstant,
            values=np.zeros(0),
            duals=np.zeros(self.rowCount),
            **self._resultRegistries(),
        )
