# -*- test-case-name: scopf.response.test.test_response -*-

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
Primary response of the surviving generators after a generator outage.

Under contingency ``s`` every surviving unit ``i`` moves to
``min(g_i + n * gamma_i * capacity_i, gMax_i)`` where ``n`` in ``[0, 1]`` is a
single signal shared by all units, and the outaged unit drops to 0.
The signal is the one that restores the balance between generation and load.
"""

from collections.abc import Collection
from math import ceil, log2

import numpy as np
from numpy.typing import ArrayLike, NDArray
from twisted.logger import Logger

from ..model import BigMMode, PowerSystem, ResponseOutcome


__all__ = ()


log = Logger()


def _linearMask(system: PowerSystem, linearUnits: Collection[int]) -> NDArray:
    mask = np.zeros(system.generatorCount, dtype=bool)
    mask[np.array(list(linearUnits), dtype=np.int64)] = True
    return mask


def _rawResponse(system: PowerSystem, generation: NDArray, signal: float) -> NDArray:
    return generation + signal * system.responseLimit


def _respond(
    system: PowerSystem,
    generation: NDArray,
    contingency: int,
    signal: float,
    linear: NDArray,
) -> tuple[NDArray, float]:
    raw = _rawResponse(system, generation, signal)
    dispatch = np.where(linear, raw, np.minimum(raw, system.gMax))
    dispatch[contingency] = 0.0
    return dispatch, float(dispatch.sum() - system.totalLoad)


def respond(
    system: PowerSystem,
    generation: ArrayLike,
    contingency: int,
    signal: float,
    *,
    linearUnits: Collection[int] = (),
) -> tuple[NDArray, float]:
    """
    Post-contingency dispatch (MW) for a given response signal, and its
    imbalance: total generation minus total load (MW).

    Units in ``linearUnits`` follow their linear response without the upper
    limit.
    """
    return _respond(
        system,
        np.asarray(generation, dtype=float),
        contingency,
        signal,
        _linearMask(system, linearUnits),
    )


def iterationLimit(system: PowerSystem, epsBinary: float) -> int:
    """
    Largest number of iterations :func:`binarySearch` may take.
    """
    total = max(float(system.gMax.sum()), epsBinary)
    return max(0, ceil(log2(total / epsBinary))) + 2


def _exactSignal(
    system: PowerSystem,
    generation: NDArray,
    contingency: int,
    linear: NDArray,
    low: float,
    high: float,
) -> float:
    """
    Root of the imbalance on ``[low, high]``, where it changes sign, found
    from the kinks of the piecewise-linear total response.
    """
    rate = system.responseLimit
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        kinks = (system.gMax - generation) / rate
    kinks = kinks[~linear & (rate > 0) & (np.arange(kinks.size) != contingency)]
    points = np.unique(
        np.concatenate([[low, high], kinks[(kinks > low) & (kinks < high)]])
    )

    def excess(n: float) -> float:
        return _respond(system, generation, contingency, n, linear)[1]

    values = [excess(float(n)) for n in points]
    for left, right, eLeft, eRight in zip(
        points[:-1], points[1:], values[:-1], values[1:], strict=True
    ):
        if eLeft <= 0 <= eRight:
            if eRight == eLeft:
                return float(left)
            return float(left + (right - left) * (-eLeft) / (eRight - eLeft))
    return float(high)


def _lowestEquivalentSignal(
    system: PowerSystem,
    generation: NDArray,
    contingency: int,
    linear: NDArray,
    signal: float,
) -> float:
    """
    Smallest signal giving the same dispatch as ``signal`` when the total
    response is flat there.
    """
    rate = system.responseLimit
    raw = _rawResponse(system, generation, signal)
    survivors = np.arange(rate.size) != contingency
    moving = survivors & (rate > 0)
    capped = moving & ~linear & (raw >= system.gMax)

    if (moving & ~capped).any():
        return signal
    if not capped.any():
        return 0.0
    reached = (system.gMax[capped] - generation[capped]) / rate[capped]
    return float(min(signal, max(0.0, reached.max())))


def _outcome(
    system: PowerSystem,
    generation: NDArray,
    contingency: int,
    signal: float,
    linear: NDArray,
    *,
    epsBinary: float,
    converged: bool,
    iterations: int,
) -> ResponseOutcome:
    dispatch, imbalance = _respond(system, generation, contingency, signal, linear)
    raw = _rawResponse(system, generation, signal)
    following = linear | (raw < system.gMax)
    following[contingency] = False

    overrun = linear & (dispatch > system.gMax + epsBinary)
    if overrun.any():
        log.debug(
            "Contingency {contingency}: linear units {units} exceed their limits",
            contingency=contingency,
            units=np.flatnonzero(overrun).tolist(),
        )

    return ResponseOutcome(
        contingency=contingency,
        signal=signal,
        generation=dispatch,
        following=following,
        imbalance=imbalance,
        converged=converged and abs(imbalance) <= epsBinary and not overrun.any(),
        iterations=iterations,
    )


def binarySearch(
    system: PowerSystem,
    generation: ArrayLike,
    contingency: int,
    epsBinary: float,
    *,
    linearUnits: Collection[int] = (),
) -> ResponseOutcome:
    """
    Find the response signal that balances generation and load after the
    outage of ``contingency``.

    The total response is continuous, piecewise linear and nondecreasing in
    the signal, so interval bisection on ``[0, 1]`` brackets the root.
    If bisection has not reached ``epsBinary`` after :func:`iterationLimit`
    minus one steps, the root is taken exactly from the final bracket.

    The outcome is not converged when even full response falls short
    (returned at signal 1) or when generation exceeds load at signal 0
    (returned at signal 0).
    """
    g = np.asarray(generation, dtype=float)
    linear = _linearMask(system, linearUnits)

    def excess(n: float) -> float:
        return _respond(system, g, contingency, n, linear)[1]

    def outcome(n: float, converged: bool, iterations: int) -> ResponseOutcome:
        return _outcome(
            system,
            g,
            contingency,
            n,
            linear,
            epsBinary=epsBinary,
            converged=converged,
            iterations=iterations,
        )

    atZero = excess(0.0)
    if atZero > epsBinary:
        log.debug(
            "Contingency {contingency}: over-generation of {excess} MW "
            "at zero signal",
            contingency=contingency,
            excess=atZero,
        )
        return outcome(0.0, False, 0)
    if atZero >= -epsBinary:
        return outcome(0.0, True, 0)

    atOne = excess(1.0)
    if atOne < -epsBinary:
        log.debug(
            "Contingency {contingency}: response falls short by {shortfall} MW",
            contingency=contingency,
            shortfall=-atOne,
        )
        return outcome(1.0, False, 0)

    limit = iterationLimit(system, epsBinary)
    low, high = 0.0, 1.0
    iterations = 0
    signal: float | None = None

    while iterations < limit - 1:
        iterations += 1
        middle = (low + high) / 2
        e = excess(middle)
        if e < -epsBinary:
            low = middle
        elif e > epsBinary:
            high = middle
        else:
            signal = middle
            break

    if signal is None:
        iterations += 1
        signal = _exactSignal(system, g, contingency, linear, low, high)

    signal = _lowestEquivalentSignal(system, g, contingency, linear, signal)
    return outcome(signal, True, iterations)


def bigM(system: PowerSystem, mode: BigMMode = BigMMode.perGenerator) -> NDArray:
    """
    Big-M constants (MW) of the response disjunctions, one per generator.

    While a unit sits at its upper limit, the gap between its output and its
    linear response lies in ``[-gamma * capacity, gMax - gMin]``.
    """
    values = np.maximum(system.gMax - system.gMin, system.responseLimit) + 1.0
    if mode is BigMMode.uniform and values.size:
        return np.full_like(values, values.max())
    return values
