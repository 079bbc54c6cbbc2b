# -*- test-case-name: scopf.model.test.test_system -*-

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
Power system: buses, lines, generators and the contingency set
"""

from collections.abc import Sequence
from functools import cached_property
from typing import Any

import numpy as np
from attrs import Attribute, evolve, field, frozen
from numpy.typing import NDArray

from ._arrays import readOnlyArray
from ._exceptions import ModelError


__all__ = ()


def _positive(instance: Any, attribute: Attribute, value: float) -> None:
    if not value > 0:
        raise ModelError(f"{attribute.name} must be positive, not {value!r}")


def _nonNegative(instance: Any, attribute: Attribute, value: float) -> None:
    if not value >= 0:
        raise ModelError(f"{attribute.name} must be non-negative, not {value!r}")


def _finite(instance: Any, attribute: Attribute, value: float) -> None:
    if not np.isfinite(value):
        raise ModelError(f"{attribute.name} must be finite, not {value!r}")


def fromPerUnit(pu: Any, baseMVA: float) -> Any:
    """
    Convert per-unit values on ``baseMVA`` to MW.
    ``pu`` may be a number, an array or a sparse matrix.
    """
    return pu * baseMVA


@frozen(kw_only=True)
class Bus:
    """
    Bus with its nodal net load in MW.
    Negative net load is a net injection.
    """

    id: int = field(validator=_nonNegative)
    netLoad: float = field(converter=float, validator=_finite)
    number: int | None = field(default=None, eq=False)


@frozen(kw_only=True)
class Line:
    """
    Transmission line in the DC approximation.

    ``reactance`` is the effective series reactance (tap ratio included) in
    per-unit; the susceptance used by the flow equations is its reciprocal.
    """

    id: int = field(validator=_nonNegative)
    fromBus: int = field(validator=_nonNegative)
    toBus: int = field(validator=_nonNegative)
    reactance: float = field(converter=float, validator=[_positive, _finite])
    capacity: float = field(converter=float, validator=[_positive, _finite])

    def __attrs_post_init__(self) -> None:
        if self.fromBus == self.toBus:
            raise ModelError(f"Line {self.id} connects bus {self.fromBus} to itself")

    @property
    def susceptance(self) -> float:
        return 1.0 / self.reactance


@frozen(kw_only=True)
class Generator:
    """
    Generator with linear cost, operating limits and primary response.
    """

    id: int = field(validator=_nonNegative)
    bus: int = field(validator=_nonNegative)
    cost: float = field(converter=float, validator=_finite)
    gMin: float = field(converter=float, validator=[_nonNegative, _finite])
    gMax: float = field(converter=float, validator=[_nonNegative, _finite])
    capacity: float = field(converter=float, validator=[_nonNegative, _finite])
    gamma: float = field(converter=float, validator=_nonNegative)

    def __attrs_post_init__(self) -> None:
        if not self.gMin <= self.gMax <= self.capacity:
            raise ModelError(
                f"Generator {self.id} limits must satisfy "
                f"gMin <= gMax <= capacity: "
                f"{self.gMin} / {self.gMax} / {self.capacity}"
            )
        if self.gamma > 1:
            raise ModelError(
                f"Generator {self.id} gamma must lie in [0, 1], not {self.gamma}"
            )

    @property
    def responseLimit(self) -> float:
        """
        Largest primary response of this generator in MW.
        """
        return self.gamma * self.capacity


@frozen(kw_only=True)
class PowerSystem:
    """
    Immutable network description.

    Buses, lines and generators are stored in id order with ids
    ``0..n-1``.
    All power quantities are in MW; reactances are per-unit on ``baseMVA``.
    ``contingencies`` is the ordered list of generators whose outage the
    dispatch must survive.
    """

    buses: tuple[Bus, ...] = field(converter=tuple)
    lines: tuple[Line, ...] = field(converter=tuple)
    generators: tuple[Generator, ...] = field(converter=tuple)
    contingencies: tuple[int, ...] = field(converter=tuple)
    baseMVA: float = field(default=100.0, converter=float, validator=_positive)
    slackBus: int = 0
    name: str = field(default="", eq=False)

    def __attrs_post_init__(self) -> None:
        for kind, items in (
            ("Bus", self.buses),
            ("Line", self.lines),
            ("Generator", self.generators),
        ):
            for index, item in enumerate(items):
                if item.id != index:
                    raise ModelError(
                        f"{kind} ids must be contiguous from 0: "
                        f"found id {item.id} at position {index}"
                    )

        busCount = len(self.buses)
        if busCount == 0:
            raise ModelError("Power system has no buses")
        if not 0 <= self.slackBus < busCount:
            raise ModelError(f"Slack bus {self.slackBus} does not exist")

        touched = set()
        for line in self.lines:
            for bus in (line.fromBus, line.toBus):
                if bus >= busCount:
                    raise ModelError(f"Line {line.id} refers to unknown bus {bus}")
                touched.add(bus)
        if busCount > 1:
            isolated = sorted(set(range(busCount)) - touched)
            if isolated:
                raise ModelError(f"Isolated buses: {isolated}")

        for generator in self.generators:
            if generator.bus >= busCount:
                raise ModelError(
                    f"Generator {generator.id} refers to unknown bus {generator.bus}"
                )

        generatorCount = len(self.generators)
        if len(set(self.contingencies)) != len(self.contingencies):
            raise ModelError("Contingency list has duplicates")
        for s in self.contingencies:
            if not 0 <= s < generatorCount:
                raise ModelError(f"Contingency {s} is not a generator id")

    @property
    def busCount(self) -> int:
        return len(self.buses)

    @property
    def lineCount(self) -> int:
        return len(self.lines)

    @property
    def generatorCount(self) -> int:
        return len(self.generators)

    @cached_property
    def netLoad(self) -> NDArray:
        """
        Nodal net loads (MW), indexed by bus id.
        """
        return readOnlyArray([bus.netLoad for bus in self.buses])

    @property
    def totalLoad(self) -> float:
        return float(self.netLoad.sum())

    @cached_property
    def cost(self) -> NDArray:
        return readOnlyArray([g.cost for g in self.generators])

    @cached_property
    def gMin(self) -> NDArray:
        return readOnlyArray([g.gMin for g in self.generators])

    @cached_property
    def gMax(self) -> NDArray:
        return readOnlyArray([g.gMax for g in self.generators])

    @cached_property
    def capacity(self) -> NDArray:
        return readOnlyArray([g.capacity for g in self.generators])

    @cached_property
    def gamma(self) -> NDArray:
        return readOnlyArray([g.gamma for g in self.generators])

    @cached_property
    def responseLimit(self) -> NDArray:
        """
        Primary response limits (MW), one per generator.
        """
        return readOnlyArray([g.responseLimit for g in self.generators])

    @cached_property
    def generatorBus(self) -> NDArray:
        return readOnlyArray([g.bus for g in self.generators], dtype=np.int64)

    @cached_property
    def lineCapacity(self) -> NDArray:
        return readOnlyArray([line.capacity for line in self.lines])

    @cached_property
    def susceptance(self) -> NDArray:
        """
        Line susceptances (per-unit), indexed by line id.
        """
        return readOnlyArray([line.susceptance for line in self.lines])

    def withContingencies(self, contingencies: Sequence[int]) -> "PowerSystem":
        """
        Copy of this system with a different contingency list.
        """
        return evolve(self, contingencies=tuple(contingencies))
