# -*- test-case-name: scopf.response.test.test_disjunctions -*-

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
Mixed-integer encoding of the primary response.

For every surviving unit ``i`` of contingency ``s`` a binary ``x[s][i]`` says
whether the unit follows its linear response (1) or sits at its upper
limit (0):

- ``|gs_i - g_i - n * r_i| <= M_i (1 - x_i)``
- ``g_i + n * r_i >= gMax_i (1 - x_i)``
- ``gs_i >= gMax_i (1 - x_i)``

with ``r_i = gamma_i * capacity_i``.
The upper limit ``gs_i <= gMax_i`` is carried by the bounds of the
post-contingency generation columns.
"""

from collections.abc import Collection

import numpy as np
from numpy.typing import ArrayLike

from ..backend import LinearRow, ModelHandle, Sense, VariableKind
from ..model import PowerSystem


__all__ = ()


def buildDisjunctions(
    model: ModelHandle,
    system: PowerSystem,
    contingency: int,
    bigM: ArrayLike,
    *,
    generation: ArrayLike,
    postContingency: ArrayLike,
    signal: int,
    linearUnits: Collection[int] = (),
) -> dict[int, int]:
    """
    Add the response disjunctions of ``contingency`` to ``model``.

    ``generation`` and ``postContingency`` are the model columns of the
    nominal and post-contingency outputs, one per generator, and ``signal``
    the column of the response signal.
    Units in ``linearUnits`` have their binary fixed to 1.
    The outaged unit's post-contingency output is fixed to 0.

    Returns the binary column of every surviving unit, keyed by generator id.
    """
    g = np.asarray(generation, dtype=np.int64)
    gs = np.asarray(postContingency, dtype=np.int64)
    M = np.asarray(bigM, dtype=float)
    s = contingency

    linear = set(linearUnits)
    survivors = [i for i in range(system.generatorCount) if i != s]

    binaries: dict[int, int] = {}
    for i in survivors:
        fixed = 1.0 if i in linear else 0.0
        binaries[i] = model.addVariable(
            f"x[{s}][{i}]", fixed, 1.0, VariableKind.binary
        )

    rows = [
        LinearRow(
            name=f"outage[{s}]",
            columns=[gs[s]],
            coefficients=[1.0],
            sense=Sense.equal,
            rhs=0.0,
        )
    ]
    for i in survivors:
        rate = float(system.responseLimit[i])
        limit = float(system.gMax[i])
        x = binaries[i]
        rows.extend(
            (
                LinearRow(
                    name=f"follow[{s}][{i}][upper]",
                    columns=[gs[i], g[i], signal, x],
                    coefficients=[1.0, -1.0, -rate, M[i]],
                    sense=Sense.lessEqual,
                    rhs=M[i],
                ),
                LinearRow(
                    name=f"follow[{s}][{i}][lower]",
                    columns=[gs[i], g[i], signal, x],
                    coefficients=[-1.0, 1.0, rate, M[i]],
                    sense=Sense.lessEqual,
                    rhs=M[i],
                ),
                LinearRow(
                    name=f"capped[{s}][{i}][response]",
                    columns=[g[i], signal, x],
                    coefficients=[1.0, rate, limit],
                    sense=Sense.greaterEqual,
                    rhs=limit,
                ),
                LinearRow(
                    name=f"capped[{s}][{i}][output]",
                    columns=[gs[i], x],
                    coefficients=[1.0, limit],
                    sense=Sense.greaterEqual,
                    rhs=limit,
                ),
            )
        )
    model.addRowsIncremental(rows)
    return binaries
