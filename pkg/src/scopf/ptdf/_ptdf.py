# -*- test-case-name: scopf.ptdf.test.test_ptdf -*-

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
Power transfer distribution factors and dedicated line cuts.

``K0`` maps balanced nodal injections to line flows, so that for a
post-contingency dispatch ``g_s`` the flows are ``K0 (B g_s - d)``.
From it

- ``K1 = K0 B`` and ``k2 = fmax - K0 d`` give ``K1 g_s + k2 = fmax + f``,
  the headroom against the limit in the to-from direction, and
- ``K3 = -K0 B`` and ``k4 = fmax + K0 d`` give ``K3 g_s + k4 = fmax - f``,
  the headroom in the from-to direction.

The same structures serve every contingency.
"""

from collections.abc import Iterable, Mapping

import numpy as np
from attrs import field, frozen
from numpy.typing import ArrayLike, NDArray
from scipy.sparse import csc_matrix
from scipy.sparse.linalg import splu
from twisted.logger import Logger

from ..backend import LinearRow, Sense
from ..model import PowerSystem, Violation, ViolationTable
from ..network import buildIncidence, reducedSystem
from ._exceptions import SingularNetwork, UnbalancedDispatch


__all__ = ()


log = Logger()


def computePTDF(system: PowerSystem) -> NDArray:
    """
    PTDF matrix ``K0`` (lines x buses), with a zero slack-bus column.

    The reduced nodal susceptance matrix is factored once and solved against
    every line's row of the reduced angle-to-flow matrix.
    """
    reduced, incidence = reducedSystem(system)
    keep = np.flatnonzero(np.arange(system.busCount) != system.slackBus)
    ptdf = np.zeros((system.lineCount, system.busCount))

    if keep.size == 0 or system.lineCount == 0:
        return ptdf

    nodal = csc_matrix((incidence.T @ reduced)[keep])

    try:
        factor = splu(nodal.T.tocsc())
    except RuntimeError as e:
        log.error("Reduced susceptance matrix is singular: {error}", error=e)
        raise SingularNetwork(f"Network is islanded: {e}") from e

    # K0' = S' N^-1, computed as (N^-T S'^T)^T
    reducedPTDF = factor.solve(reduced.T.toarray()).T
    if not np.isfinite(reducedPTDF).all():
        raise SingularNetwork("Network is islanded: PTDF is not finite")

    ptdf[:, keep] = reducedPTDF
    return ptdf


@frozen(kw_only=True)
class PtdfBundle:
    """
    PTDF matrix with the dedicated cut structures derived from it.
    Cut structures are in MW and generator-indexed.
    """

    K0: NDArray = field(eq=False)
    K1: NDArray = field(eq=False)
    k2: NDArray = field(eq=False)
    K3: NDArray = field(eq=False)
    k4: NDArray = field(eq=False)
    capacity: NDArray = field(eq=False)
    totalLoad: float

    @property
    def lineCount(self) -> int:
        return int(self.capacity.size)

    def flows(self, generation: ArrayLike) -> NDArray:
        """
        Line flows (MW) of a balanced dispatch.
        """
        return self.K1 @ np.asarray(generation, dtype=float) + (
            self.k2 - self.capacity
        )


def buildCutStructures(system: PowerSystem, ptdf: NDArray | None = None) -> PtdfBundle:
    """
    Precompute ``K1``, ``k2``, ``K3`` and ``k4`` from ``K0``.
    """
    if ptdf is None:
        ptdf = computePTDF(system)
    _, assignment = buildIncidence(system)

    shift = ptdf @ system.netLoad
    transfer = np.asarray((assignment.T @ ptdf.T).T)
    capacity = np.array(system.lineCapacity)

    bundle = PtdfBundle(
        K0=ptdf,
        K1=transfer,
        k2=capacity - shift,
        K3=-transfer,
        k4=capacity + shift,
        capacity=capacity,
        totalLoad=system.totalLoad,
    )
    for array in (bundle.K0, bundle.K1, bundle.k2, bundle.K3, bundle.k4):
        array.setflags(write=False)
    return bundle


def screen(
    bundle: PtdfBundle,
    dispatch: Mapping[int, ArrayLike] | Iterable[tuple[int, ArrayLike]],
    *,
    balanceTolerance: float = 0.05,
    floor: float = 1e-9,
) -> ViolationTable:
    """
    Line violations (MW) of post-contingency dispatches keyed by contingency.

    A dispatch whose total differs from the total load by more than
    ``balanceTolerance`` MW raises :exc:`UnbalancedDispatch`.
    Violations of ``floor`` MW or less are not reported.
    """
    items = list(dispatch.items() if isinstance(dispatch, Mapping) else dispatch)
    entries: list[Violation] = []

    if not items:
        return ViolationTable()

    contingencies = [int(s) for s, _ in items]
    generation = np.column_stack([np.asarray(g, dtype=float) for _, g in items])

    imbalance = generation.sum(axis=0) - bundle.totalLoad
    unbalanced = np.flatnonzero(np.abs(imbalance) > balanceTolerance)
    if unbalanced.size:
        first = unbalanced[0]
        raise UnbalancedDispatch(
            f"Dispatch for contingency {contingencies[first]} is off balance "
            f"by {imbalance[first]:.6g} MW"
        )

    reverse = bundle.K1 @ generation + bundle.k2[:, None]
    forward = bundle.K3 @ generation + bundle.k4[:, None]
    alpha = np.maximum(0.0, -np.minimum(reverse, forward))

    lines, columns = np.nonzero(alpha > floor)
    for line, column in zip(lines, columns, strict=True):
        entries.append(
            Violation(
                contingency=contingencies[column],
                line=int(line),
                alpha=float(alpha[line, column]),
            )
        )

    table = ViolationTable(entries=entries)
    log.debug(
        "Screened {count} states: {violations} violations, largest {alpha} MW",
        count=len(items),
        violations=len(table),
        alpha=table.alphaMax,
    )
    return table


def cutName(contingency: int, line: int, direction: str) -> str:
    return f"cut[{contingency}][{line}][{direction}]"


def cutRows(
    bundle: PtdfBundle, contingency: int, line: int, generationColumns: NDArray
) -> tuple[LinearRow, LinearRow]:
    """
    The two dedicated cut rows for a contingency and line over the columns of
    that contingency's post-contingency generation:
    ``K1[l] g_s >= -k2[l]`` and ``K3[l] g_s >= -k4[l]``.
    """
    columns = np.asarray(generationColumns, dtype=np.int64)
    rows = []
    for direction, matrix, vector in (
        ("reverse", bundle.K1, bundle.k2),
        ("forward", bundle.K3, bundle.k4),
    ):
        coefficients = matrix[line]
        nonzero = np.flatnonzero(coefficients)
        rows.append(
            LinearRow(
                name=cutName(contingency, line, direction),
                columns=columns[nonzero],
                coefficients=coefficients[nonzero],
                sense=Sense.greaterEqual,
                rhs=-float(vector[line]),
            )
        )
    return rows[0], rows[1]
