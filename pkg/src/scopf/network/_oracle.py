# -*- test-case-name: scopf.network.test.test_oracle -*-

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
Line flows and overloads from the angle formulation of the DC power flow.
"""

import numpy as np
from numpy.typing import NDArray
from scipy.sparse import hstack, identity
from twisted.logger import Logger

from ..backend import Sense, SolveStatus, newModel
from ..model import PowerSystem, fromPerUnit
from ._matrices import buildAngleToFlow, buildIncidence


__all__ = ()


log = Logger()


def angleFlowViolation(
    system: PowerSystem, generation: NDArray, *, backend: str = "highs"
) -> tuple[NDArray, float]:
    """
    Solve the DC power flow for ``generation`` (MW) with bus angles as
    variables, minimizing the largest line overload.

    Returns the line flows (MW) and the largest overload (MW, 0 when every
    line is within its capacity).
    An unbalanced dispatch has no power flow; its flows are NaN and its
    overload infinite.
    """
    incidence, assignment = buildIncidence(system)
    angleToFlow = buildAngleToFlow(system)
    lineCapacity = system.lineCapacity
    lineCount = system.lineCount

    model = newModel(backend=backend)

    thetaLower = np.full(system.busCount, -np.inf)
    thetaUpper = np.full(system.busCount, np.inf)
    thetaLower[system.slackBus] = thetaUpper[system.slackBus] = 0.0
    theta = model.addVariables("theta", system.busCount, thetaLower, thetaUpper)
    flow = model.addVariables("f", lineCount, -np.inf, np.inf)
    overload = model.addVariable("t")

    injection = assignment @ np.asarray(generation, dtype=float)
    model.addConstraints(
        "balance",
        flow,
        -incidence.T,
        Sense.equal,
        system.netLoad - injection,
    )
    model.addConstraints(
        "kirchhoff",
        np.concatenate([flow, theta]),
        hstack([identity(lineCount), -fromPerUnit(angleToFlow, system.baseMVA)]),
        Sense.equal,
        0.0,
    )
    for direction, sign in (("forward", 1.0), ("reverse", -1.0)):
        model.addConstraints(
            direction,
            np.append(flow, overload),
            hstack([sign * identity(lineCount), -np.ones((lineCount, 1))]),
            Sense.lessEqual,
            lineCapacity,
        )
    model.setObjective([overload], [1.0])

    result = model.solve()
    if result.status is not SolveStatus.optimal:
        log.info(
            "No DC power flow for dispatch: {status}", status=result.status.value
        )
        return np.full(lineCount, np.nan), np.inf

    return result.valuesOf(flow), max(0.0, result.objective)
