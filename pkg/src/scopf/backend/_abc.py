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
Solver backend abstract base class.
"""

from abc import ABC, abstractmethod
from collections.abc import Iterable, Mapping
from math import inf
from typing import Any, ClassVar

import numpy as np
from attrs import Factory, field, mutable
from numpy.typing import ArrayLike, NDArray
from scipy.sparse import coo_matrix, csr_matrix
from twisted.logger import Logger

from ._exceptions import DuplicateName, ModelBuildError, UnknownVariable
from ._types import (
    LinearRow,
    ModelParameters,
    Sense,
    SolveResult,
    VariableKind,
)


__all__ = ()


@mutable(kw_only=True, eq=False)
class RowBlock:
    """
    Rows added together, as coordinate triplets over model columns.
    """

    first: int
    rowIndex: NDArray
    columnIndex: NDArray
    values: NDArray
    senses: list[Sense]
    rhs: NDArray

    @property
    def count(self) -> int:
        return len(self.senses)


@mutable(kw_only=True, eq=False)
class ModelHandle(ABC):
    """
    Linear or mixed-integer model under construction.

    Variables and rows are registered by unique name and addressed by integer
    column and row indices.
    Subclasses hand the accumulated model to a solver.
    """

    log: ClassVar[Logger] = Logger()

    parameters: ModelParameters = Factory(ModelParameters)

    _columns: dict[str, int] = field(init=False, factory=dict)
    _names: list[str] = field(init=False, factory=list)
    _lower: list[float] = field(init=False, factory=list)
    _upper: list[float] = field(init=False, factory=list)
    _kinds: list[VariableKind] = field(init=False, factory=list)

    _rows: dict[str, int] = field(init=False, factory=dict)
    _blocks: list[RowBlock] = field(init=False, factory=list)
    _rowCount: int = field(init=False, default=0)

    _objectiveColumns: NDArray = field(
        init=False, factory=lambda: np.zeros(0, dtype=np.int64)
    )
    _objectiveCoefficients: NDArray = field(init=False, factory=lambda: np.zeros(0))
    _objectiveConstant: float = field(init=False, default=0.0)
    _maximize: bool = field(init=False, default=False)

    ##
    # Registry
    ##

    @property
    def variableCount(self) -> int:
        return len(self._kinds)

    @property
    def rowCount(self) -> int:
        return self._rowCount

    @property
    def binaryCount(self) -> int:
        return sum(1 for kind in self._kinds if kind is VariableKind.binary)

    def column(self, name: str) -> int:
        """
        Column index of the named variable.
        """
        try:
            return self._columns[name]
        except KeyError:
            raise UnknownVariable(f"No variable named {name!r}") from None

    def row(self, name: str) -> int:
        """
        Row index of the named constraint.
        """
        try:
            return self._rows[name]
        except KeyError:
            raise UnknownVariable(f"No constraint named {name!r}") from None

    def hasRow(self, name: str) -> bool:
        return name in self._rows

    def bounds(self, column: int) -> tuple[float, float]:
        self._checkColumns(np.array([column]))
        return self._lower[column], self._upper[column]

    ##
    # Variables
    ##

    def addVariable(
        self,
        name: str,
        lower: float = 0.0,
        upper: float = inf,
        kind: VariableKind = VariableKind.continuous,
    ) -> int:
        """
        Add a variable and return its column.
        """
        return int(self._addVariables([name], [lower], [upper], kind)[0])

    def addVariables(
        self,
        name: str,
        count: int,
        lower: ArrayLike = 0.0,
        upper: ArrayLike = inf,
        kind: VariableKind = VariableKind.continuous,
    ) -> NDArray:
        """
        Add ``count`` variables named ``name[0]``, ``name[1]``, ... and return
        their columns.
        Bounds may be scalars or one value per variable.
        """
        lowers = np.broadcast_to(np.asarray(lower, dtype=float), (count,))
        uppers = np.broadcast_to(np.asarray(upper, dtype=float), (count,))
        return self._addVariables(
            [f"{name}[{k}]" for k in range(count)], lowers, uppers, kind
        )

    def _addVariables(
        self,
        names: list[str],
        lowers: ArrayLike,
        uppers: ArrayLike,
        kind: VariableKind,
    ) -> NDArray:
        lowerValues = [float(v) for v in np.asarray(lowers, dtype=float)]
        upperValues = [float(v) for v in np.asarray(uppers, dtype=float)]

        for name, lower, upper in zip(names, lowerValues, upperValues, strict=True):
            if name in self._columns:
                raise DuplicateName(f"Variable {name!r} already exists")
            if np.isnan(lower) or np.isnan(upper) or lower > upper:
                raise ModelBuildError(
                    f"Invalid bounds for variable {name!r}: [{lower}, {upper}]"
                )
            if kind is VariableKind.binary and not (0 <= lower and upper <= 1):
                raise ModelBuildError(
                    f"Binary variable {name!r} must have bounds within [0, 1]"
                )
        if len(set(names)) != len(names):
            raise DuplicateName(f"Repeated variable names in {names[:3]}...")

        first = self.variableCount
        for offset, name in enumerate(names):
            self._columns[name] = first + offset
        self._names.extend(names)
        self._lower.extend(lowerValues)
        self._upper.extend(upperValues)
        self._kinds.extend([kind] * len(names))

        self._variablesAdded(first, self.variableCount)

        return np.arange(first, self.variableCount, dtype=np.int64)

    ##
    # Constraints
    ##

    def addLinearConstraint(
        self,
        coefficients: Mapping[str, float],
        sense: Sense,
        rhs: float,
        name: str,
    ) -> int:
        """
        Add a row given as variable names mapped to coefficients.
        """
        columns = np.array(
            [self.column(variable) for variable in coefficients], dtype=np.int64
        )
        return self.addConstraint(
            name,
            columns,
            np.array(list(coefficients.values()), dtype=float),
            sense,
            rhs,
        )

    def addConstraint(
        self,
        name: str,
        columns: ArrayLike,
        coefficients: ArrayLike,
        sense: Sense,
        rhs: float,
    ) -> int:
        """
        Add a row over the given columns and return its index.
        """
        rows = self.addRowsIncremental(
            [
                LinearRow(
                    name=name,
                    columns=columns,
                    coefficients=coefficients,
                    sense=sense,
                    rhs=rhs,
                )
            ]
        )
        return int(rows[0])

    def addConstraints(
        self,
        name: str,
        columns: ArrayLike,
        matrix: Any,
        sense: Sense,
        rhs: ArrayLike,
    ) -> NDArray:
        """
        Add the rows ``matrix @ x[columns] (sense) rhs``, named ``name[0]``,
        ``name[1]``, ..., and return their indices.
        ``matrix`` may be dense or sparse; its columns map to ``columns``.
        """
        columnMap = np.asarray(columns, dtype=np.int64)
        coo = coo_matrix(matrix)
        rowCount = coo.shape[0]
        rhsValues = np.broadcast_to(np.asarray(rhs, dtype=float), (rowCount,))

        if coo.shape[1] != columnMap.size:
            raise ModelBuildError(
                f"Rows {name!r} have {coo.shape[1]} columns "
                f"but {columnMap.size} variables"
            )
        names = [f"{name}[{k}]" for k in range(rowCount)]
        self._checkColumns(columnMap)
        self._checkRowNames(names)
        self._appendBlock(
            names,
            coo.row.astype(np.int64),
            columnMap[coo.col],
            coo.data.astype(float),
            [sense] * rowCount,
            np.array(rhsValues, dtype=float),
        )
        return np.arange(self._rowCount - rowCount, self._rowCount, dtype=np.int64)

    def addRowsIncremental(self, rows: Iterable[LinearRow]) -> NDArray:
        """
        Add rows to a model that may already have been solved.
        The next solve behaves as if the rows had been present from the start.
        All rows are checked before any is added.
        """
        rows = list(rows)
        names = [row.name for row in rows]

        for row in rows:
            if row.columns.size != row.coefficients.size:
                raise ModelBuildError(
                    f"Row {row.name!r} has {row.columns.size} columns "
                    f"and {row.coefficients.size} coefficients"
                )
            if not np.isfinite(row.rhs) or not np.isfinite(row.coefficients).all():
                raise ModelBuildError(f"Row {row.name!r} has non-finite data")
            self._checkColumns(row.columns)
        self._checkRowNames(names)

        rowIndex = np.concatenate(
            [np.full(row.columns.size, k, dtype=np.int64) for k, row in enumerate(rows)]
            or [np.zeros(0, dtype=np.int64)]
        )
        columnIndex = np.concatenate(
            [row.columns for row in rows] or [np.zeros(0, dtype=np.int64)]
        )
        values = np.concatenate(
            [row.coefficients for row in rows] or [np.zeros(0)]
        )
        self._appendBlock(
            names,
            rowIndex,
            columnIndex,
            values,
            [row.sense for row in rows],
            np.array([row.rhs for row in rows], dtype=float),
        )
        return np.arange(self._rowCount - len(rows), self._rowCount, dtype=np.int64)

    def _checkColumns(self, columns: NDArray) -> None:
        if columns.size == 0:
            return
        bad = columns[(columns < 0) | (columns >= self.variableCount)]
        if bad.size:
            raise UnknownVariable(f"No variable with column {int(bad[0])}")

    def _checkRowNames(self, names: list[str]) -> None:
        for name in names:
            if name in self._rows:
                raise DuplicateName(f"Constraint {name!r} already exists")
        if len(set(names)) != len(names):
            raise DuplicateName("Repeated constraint names in one batch")

    def _appendBlock(
        self,
        names: list[str],
        rowIndex: NDArray,
        columnIndex: NDArray,
        values: NDArray,
        senses: list[Sense],
        rhs: NDArray,
    ) -> None:
        first = self._rowCount
        for offset, name in enumerate(names):
            self._rows[name] = first + offset
        block = RowBlock(
            first=first,
            rowIndex=rowIndex + first,
            columnIndex=columnIndex,
            values=values,
            senses=senses,
            rhs=rhs,
        )
        self._blocks.append(block)
        self._rowCount += len(names)
        self._rowsAdded(block, names)

    ##
    # Objective
    ##

    def setObjective(
        self,
        columns: ArrayLike,
        coefficients: ArrayLike,
        *,
        constant: float = 0.0,
        maximize: bool = False,
    ) -> None:
        """
        Set the linear objective; columns not listed have coefficient 0.
        """
        columnArray = np.asarray(columns, dtype=np.int64).ravel()
        coefficientArray = np.asarray(coefficients, dtype=float).ravel()
        if columnArray.size != coefficientArray.size:
            raise ModelBuildError(
                f"Objective has {columnArray.size} columns "
                f"and {coefficientArray.size} coefficients"
            )
        self._checkColumns(columnArray)
        self._objectiveColumns = columnArray
        self._objectiveCoefficients = coefficientArray
        self._objectiveConstant = float(constant)
        self._maximize = maximize

    ##
    # Assembled data for solvers
    ##

    def objectiveVector(self) -> NDArray:
        """
        Dense objective coefficients, one per column.
        """
        vector = np.zeros(self.variableCount)
        np.add.at(vector, self._objectiveColumns, self._objectiveCoefficients)
        return vector

    def constraintMatrix(self) -> csr_matrix:
        """
        All rows as a sparse matrix over all columns; repeated entries add up.
        """
        if self._blocks:
            rowIndex = np.concatenate([b.rowIndex for b in self._blocks])
            columnIndex = np.concatenate([b.columnIndex for b in self._blocks])
            values = np.concatenate([b.values for b in self._blocks])
        else:
            rowIndex = columnIndex = np.zeros(0, dtype=np.int64)
            values = np.zeros(0)
        return csr_matrix(
            (values, (rowIndex, columnIndex)),
            shape=(self._rowCount, self.variableCount),
        )

    def rowSenses(self) -> list[Sense]:
        return [sense for block in self._blocks for sense in block.senses]

    def rowRightHandSides(self) -> NDArray:
        if not self._blocks:
            return np.zeros(0)
        return np.concatenate([block.rhs for block in self._blocks])

    def variableBounds(self) -> tuple[NDArray, NDArray]:
        return np.array(self._lower, dtype=float), np.array(self._upper, dtype=float)

    def integrality(self) -> NDArray:
        return np.array(
            [1 if kind is VariableKind.binary else 0 for kind in self._kinds],
            dtype=np.int64,
        )

    ##
    # Solving
    ##

    def solve(self, *, timeLimit: float | None = None) -> SolveResult:
        """
        Solve the model.
        ``timeLimit`` (seconds) further caps the model's time limit for this
        solve.
        """
        limit = self.parameters.timeLimit if timeLimit is None else timeLimit
        self.log.debug(
            "Solving model with {variables} variables ({binaries} binary) "
            "and {rows} rows",
            variables=self.variableCount,
            binaries=self.binaryCount,
            rows=self.rowCount,
        )
        result = self._solve(min(limit, self.parameters.timeLimit))
        self.log.debug(
            "Solve finished: {status}, objective {objective}",
            status=result.status.value,
            objective=result.objective,
        )
        return result

    def _resultRegistries(self) -> dict[str, Any]:
        return {"columns": dict(self._columns), "rows": dict(self._rows)}

    def _variablesAdded(self, start: int, stop: int) -> None:
        """
        Hook called after columns ``start`` to ``stop - 1`` were added.
        """

    def _rowsAdded(self, block: RowBlock, names: list[str]) -> None:
        """
        Hook called after a block of rows was added.
        """

    @abstractmethod
    def _solve(self, timeLimit: float) -> SolveResult:
        """
        Solve the accumulated model within ``timeLimit`` seconds.
        """
