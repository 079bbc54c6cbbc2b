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
JSON serialization/deserialization for dispatch results
"""

from enum import Enum, unique
from typing import Any, cast

import numpy as np

from .._results import DispatchState, ResponseOutcome
from ._json import deserialize, registerDeserializer, registerSerializer, serialize


__all__ = ()


@unique
class ResponseOutcomeJSONKey(Enum):
    """
    Response outcome JSON keys
    """

    contingency = "contingency"
    signal = "n_s"
    generation = "g_s"
    following = "x_s"
    imbalance = "imbalance_mw"
    converged = "converged"
    iterations = "iterations"


class ResponseOutcomeJSONType(Enum):
    """
    Response outcome attribute types
    """

    contingency = int
    signal = float
    generation = np.ndarray
    following = np.ndarray
    imbalance = float
    converged = bool
    iterations = int


def serializeResponseOutcome(outcome: ResponseOutcome) -> dict[str, Any]:
    return serialize(outcome, ResponseOutcomeJSONKey)


registerSerializer(ResponseOutcome, serializeResponseOutcome)


def deserializeResponseOutcome(
    obj: dict[str, Any], cl: type[ResponseOutcome]
) -> ResponseOutcome:
    assert cl is ResponseOutcome, (cl, obj)

    return cast(
        ResponseOutcome,
        deserialize(
            obj, ResponseOutcome, ResponseOutcomeJSONType, ResponseOutcomeJSONKey
        ),
    )


registerDeserializer(ResponseOutcome, deserializeResponseOutcome)


@unique
class DispatchStateJSONKey(Enum):
    """
    Dispatch state JSON keys
    """

    generation = "g"
    outcomes = "contingencies"
    objective = "objective"
    feasible = "feasible"
    maxViolation = "max_violation_mw"


class DispatchStateJSONType(Enum):
    """
    Dispatch state attribute types
    """

    generation = np.ndarray
    outcomes = tuple[ResponseOutcome, ...]
    objective = float
    feasible = bool
    maxViolation = float


def serializeDispatchState(dispatch: DispatchState) -> dict[str, Any]:
    return serialize(dispatch, DispatchStateJSONKey)


registerSerializer(DispatchState, serializeDispatchState)


def deserializeDispatchState(
    obj: dict[str, Any], cl: type[DispatchState]
) -> DispatchState:
    assert cl is DispatchState, (cl, obj)

    return cast(
        DispatchState,
        deserialize(obj, DispatchState, DispatchStateJSONType, DispatchStateJSONKey),
    )


registerDeserializer(DispatchState, deserializeDispatchState)
