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
Test strategies for model data.
"""

from collections.abc import Callable
from typing import Any

import numpy as np
from hypothesis.strategies import (
    booleans,
    composite,
    floats,
    integers,
    lists,
    sampled_from,
)
from numpy.typing import NDArray

from ._config import BigMMode, Method, RunConfig
from ._system import Bus, Generator, Line, PowerSystem


__all__ = (
    "balancedInjections",
    "buses",
    "dispatches",
    "generators",
    "lines",
    "powerSystems",
    "runConfigs",
)


##
# Network elements
##


@composite
def buses(draw: Callable[..., Any], id: int = 0) -> Bus:
    """
    Strategy that generates :class:`Bus` values.
    """
    return Bus(id=id, netLoad=draw(floats(min_value=-50.0, max_value=200.0)))


@composite
def lines(
    draw: Callable[..., Any], id: int = 0, fromBus: int = 0, toBus: int = 1
) -> Line:
    """
    Strategy that generates :class:`Line` values.
    """
    return Line(
        id=id,
        fromBus=fromBus,
        toBus=toBus,
        reactance=draw(floats(min_value=0.01, max_value=0.5)),
        capacity=draw(floats(min_value=10.0, max_value=500.0)),
    )


@composite
def generators(draw: Callable[..., Any], id: int = 0, bus: int = 0) -> Generator:
    """
    Strategy that generates :class:`Generator` values.
    """
    capacity = draw(floats(min_value=1.0, max_value=500.0))
    gMax = draw(floats(min_value=0.0, max_value=capacity))
    gMin = draw(floats(min_value=0.0, max_value=gMax))
    return Generator(
        id=id,
        bus=bus,
        cost=draw(floats(min_value=0.0, max_value=100.0)),
        gMin=gMin,
        gMax=gMax,
        capacity=capacity,
        gamma=draw(floats(min_value=0.0, max_value=0.5)),
    )


##
# Systems
##


@composite
def powerSystems(
    draw: Callable[..., Any],
    minBuses: int = 2,
    maxBuses: int = 8,
    maxGenerators: int = 5,
) -> PowerSystem:
    """
    Strategy that generates connected :class:`PowerSystem` values.

    A random spanning tree keeps the network connected; extra lines add
    meshing.
    Every generator is a contingency.
    """
    busCount = draw(integers(min_value=minBuses, max_value=maxBuses))

    endpoints: list[tuple[int, int]] = [
        (draw(integers(min_value=0, max_value=bus - 1)), bus)
        for bus in range(1, busCount)
    ]
    if busCount > 2:
        extras = draw(
            lists(
                lists(
                    integers(min_value=0, max_value=busCount - 1),
                    min_size=2,
                    max_size=2,
                    unique=True,
                ),
                max_size=busCount,
            )
        )
        endpoints.extend((a, b) for a, b in extras)

    generatorCount = draw(integers(min_value=1, max_value=maxGenerators))

    return PowerSystem(
        buses=[draw(buses(id=i)) for i in range(busCount)],
        lines=[
            draw(lines(id=i, fromBus=a, toBus=b))
            for i, (a, b) in enumerate(endpoints)
        ],
        generators=[
            draw(
                generators(
                    id=i, bus=draw(integers(min_value=0, max_value=busCount - 1))
                )
            )
            for i in range(generatorCount)
        ],
        contingencies=range(generatorCount),
        slackBus=draw(integers(min_value=0, max_value=busCount - 1)),
    )


@composite
def dispatches(draw: Callable[..., Any], system: PowerSystem) -> NDArray:
    """
    Strategy that generates nominal dispatches within generator limits.
    """
    return np.array(
        [
            draw(floats(min_value=g.gMin, max_value=g.gMax))
            for g in system.generators
        ]
    )


@composite
def balancedInjections(
    draw: Callable[..., Any], system: PowerSystem, scale: float = 200.0
) -> NDArray:
    """
    Strategy that generates nodal injections (MW) summing to zero.
    """
    values = np.array(
        [
            draw(floats(min_value=-scale, max_value=scale))
            for _ in range(system.busCount)
        ]
    )
    return values - values.mean()


##
# Configuration
##


@composite
def runConfigs(draw: Callable[..., Any]) -> RunConfig:
    """
    Strategy that generates valid :class:`RunConfig` values.
    """
    beta2 = draw(floats(min_value=1.01, max_value=3.0))
    epsViolation = draw(floats(min_value=1e-3, max_value=1.0))
    schedule = sorted(
        draw(lists(floats(min_value=0.0, max_value=99.0), max_size=4))
    )
    return RunConfig(
        gammaDefault=draw(floats(min_value=0.0, max_value=1.0)),
        beta1=draw(floats(min_value=beta2, max_value=10.0)),
        beta2=beta2,
        epsViolation=epsViolation,
        epsBinary=draw(floats(min_value=1e-12, max_value=epsViolation / 2)),
        mipGap=draw(floats(min_value=1e-6, max_value=0.5)),
        method=draw(sampled_from(Method)),
        pSchedule=schedule,
        timeLimit=draw(floats(min_value=1.0, max_value=1e5)),
        bigMMode=draw(sampled_from(BigMMode)),
        backend="highs",
        threads=draw(integers(min_value=1, max_value=8)),
        seed=draw(integers(min_value=0, max_value=2**31 - 1)),
        contingencies=draw(
            sampled_from([None, ()])
            if draw(booleans())
            else lists(integers(min_value=0, max_value=20), unique=True)
        ),
        maxIterations=draw(integers(min_value=1, max_value=1000)),
    )
