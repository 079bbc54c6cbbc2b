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
JSON serialization/deserialization for run reports and configuration
"""

from enum import Enum, unique
from typing import Any, cast

from .._config import BigMMode, Method, RunConfig
from .._report import IterationRecord, RunReport, RunStatus
from ._json import deserialize, registerDeserializer, registerSerializer, serialize


__all__ = ()


@unique
class IterationRecordJSONKey(Enum):
    """
    Iteration record JSON keys, named like the convergence log columns
    """

    iteration = "iter"
    wallTime = "wall_s"
    objective = "objective"
    alpha = "alpha_mw"
    cutsAdded = "cuts_added"
    disjunctionCount = "S_size"
    lowerBound = "lb"
    upperBound = "ub"


class IterationRecordJSONType(Enum):
    """
    Iteration record attribute types
    """

    iteration = int
    wallTime = float
    objective = float
    alpha = float
    cutsAdded = int
    disjunctionCount = int
    lowerBound = float | None
    upperBound = float | None


def serializeIterationRecord(record: IterationRecord) -> dict[str, Any]:
    return serialize(record, IterationRecordJSONKey)


registerSerializer(IterationRecord, serializeIterationRecord)


def deserializeIterationRecord(
    obj: dict[str, Any], cl: type[IterationRecord]
) -> IterationRecord:
    assert cl is IterationRecord, (cl, obj)

    return cast(
        IterationRecord,
        deserialize(
            obj, IterationRecord, IterationRecordJSONType, IterationRecordJSONKey
        ),
    )


registerDeserializer(IterationRecord, deserializeIterationRecord)


@unique
class RunReportJSONKey(Enum):
    """
    Run report JSON keys
    """

    method = "method"
    status = "status"
    iterations = "iterations"
    disjunctionStates = "disjunction_states"
    wallTime = "wall_s"


class RunReportJSONType(Enum):
    """
    Run report attribute types
    """

    method = Method
    status = RunStatus
    iterations = tuple[IterationRecord, ...]
    disjunctionStates = tuple[int, ...]
    wallTime = float


def serializeRunReport(report: RunReport) -> dict[str, Any]:
    return serialize(report, RunReportJSONKey)


registerSerializer(RunReport, serializeRunReport)


def deserializeRunReport(obj: dict[str, Any], cl: type[RunReport]) -> RunReport:
    assert cl is RunReport, (cl, obj)

    return cast(
        RunReport,
        deserialize(obj, RunReport, RunReportJSONType, RunReportJSONKey),
    )


registerDeserializer(RunReport, deserializeRunReport)


@unique
class RunConfigJSONKey(Enum):
    """
    Run configuration JSON keys
    """

    gammaDefault = "gamma"
    beta1 = "beta1"
    beta2 = "beta2"
    epsViolation = "eps_violation_mw"
    epsBinary = "eps_binary_mw"
    mipGap = "mip_gap"
    method = "method"
    pSchedule = "p_schedule"
    timeLimit = "time_limit_s"
    bigMMode = "big_m_mode"
    backend = "backend"
    threads = "threads"
    seed = "seed"
    contingencies = "contingencies"
    maxIterations = "max_iterations"


class RunConfigJSONType(Enum):
    """
    Run configuration attribute types
    """

    gammaDefault = float
    beta1 = float
    beta2 = float
    epsViolation = float
    epsBinary = float
    mipGap = float
    method = Method
    pSchedule = tuple[float, ...]
    timeLimit = float
    bigMMode = BigMMode
    backend = str
    threads = int
    seed = int
    contingencies = tuple[int, ...] | None
    maxIterations = int


def serializeRunConfig(config: RunConfig) -> dict[str, Any]:
    return serialize(config, RunConfigJSONKey)


registerSerializer(RunConfig, serializeRunConfig)


def deserializeRunConfig(obj: dict[str, Any], cl: type[RunConfig]) -> RunConfig:
    assert cl is RunConfig, (cl, obj)

    return cast(
        RunConfig,
        deserialize(obj, RunConfig, RunConfigJSONType, RunConfigJSONKey),
    )


registerDeserializer(RunConfig, deserializeRunConfig)
