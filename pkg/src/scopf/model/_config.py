# -*- test-case-name: scopf.model.test.test_config -*-

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
Run configuration
"""

from enum import Enum
from math import inf, isfinite
from typing import Any

from attrs import field, frozen

from ._exceptions import ConfigurationError


__all__ = ()


class Method(Enum):
    """
    Solution method.
    """

    ef = "ef"
    bd = "bd"
    bddc = "bddc"
    ccga = "ccga"


class BigMMode(Enum):
    """
    How big-M constants of the response disjunctions are chosen.
    """

    perGenerator = "per_generator"
    uniform = "global"


def _enumerant(enumType: type[Enum]) -> Any:
    def convert(value: object) -> Enum:
        try:
            return enumType(value)
        except ValueError:
            names = ", ".join(str(e.value) for e in enumType)
            raise ConfigurationError(
                f"Unknown {enumType.__name__} {value!r}; expected one of: {names}"
            ) from None

    return convert


def _tupleOfFloats(values: object) -> tuple[float, ...]:
    return tuple(float(v) for v in values)  # type: ignore[attr-defined]


def _optionalTupleOfInts(values: object) -> tuple[int, ...] | None:
    if values is None:
        return None
    return tuple(int(v) for v in values)  # type: ignore[attr-defined]


@frozen(kw_only=True)
class RunConfig:
    """
    Parameters of a solve.
    Defaults are the values used for the published experiments.
    """

    gammaDefault: float = field(default=0.05, converter=float)
    beta1: float = field(default=5.0, converter=float)
    beta2: float = field(default=1.2, converter=float)
    epsViolation: float = field(default=0.05, converter=float)
    epsBinary: float = field(default=1e-10, converter=float)
    mipGap: float = field(default=0.005, converter=float)
    method: Method = field(default=Method.ccga, converter=_enumerant(Method))
    pSchedule: tuple[float, ...] = field(
        default=(0.0, 10.0, 50.0), converter=_tupleOfFloats
    )
    timeLimit: float = field(default=inf, converter=float)
    bigMMode: BigMMode = field(
        default=BigMMode.perGenerator, converter=_enumerant(BigMMode)
    )
    backend: str = "highs"
    threads: int = 1
    seed: int = 0
    contingencies: tuple[int, ...] | None = field(
        default=None, converter=_optionalTupleOfInts
    )
    maxIterations: int = 200

    def __attrs_post_init__(self) -> None:
        if not self.beta1 >= self.beta2 > 1:
            raise ConfigurationError(
                f"beta1 ({self.beta1}) must be at least beta2 ({self.beta2}), "
                f"and beta2 must exceed 1"
            )
        if not 0 < self.mipGap < 1:
            raise ConfigurationError(
                f"MIP gap must lie strictly between 0 and 1, not {self.mipGap}"
            )
        if not 0 < self.epsBinary < self.epsViolation:
            raise ConfigurationError(
                f"Binary search tolerance ({self.epsBinary} MW) must be positive "
                f"and below the violation tolerance ({self.epsViolation} MW)"
            )
        if not 0 <= self.gammaDefault <= 1:
            raise ConfigurationError(
                f"Default gamma must lie in [0, 1], not {self.gammaDefault}"
            )
        schedule = self.pSchedule
        if list(schedule) != sorted(schedule) or any(
            not 0 <= p < 100 for p in schedule
        ):
            raise ConfigurationError(
                f"p schedule must be ascending percentages below 100: {schedule}"
            )
        if not self.timeLimit > 0:
            raise ConfigurationError(
                f"Time limit must be positive, not {self.timeLimit}"
            )
        if self.threads < 1:
            raise ConfigurationError(f"Thread count must be positive: {self.threads}")
        if self.maxIterations < 1:
            raise ConfigurationError(
                f"Iteration limit must be positive: {self.maxIterations}"
            )

    @property
    def hasTimeLimit(self) -> bool:
        return isfinite(self.timeLimit)
