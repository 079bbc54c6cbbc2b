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
Power system data model
"""

from ._bounds import BoundEvent, BoundKind, BoundTrace
from ._config import BigMMode, Method, RunConfig
from ._exceptions import ConfigurationError, ModelError
from ._report import IterationRecord, RunReport, RunStatus
from ._results import DispatchState, ResponseOutcome, Violation, ViolationTable
from ._system import Bus, Generator, Line, PowerSystem, fromPerUnit


__all__ = (
    "BigMMode",
    "BoundEvent",
    "BoundKind",
    "BoundTrace",
    "Bus",
    "ConfigurationError",
    "DispatchState",
    "Generator",
    "IterationRecord",
    "Line",
    "Method",
    "ModelError",
    "PowerSystem",
    "ResponseOutcome",
    "RunConfig",
    "RunReport",
    "RunStatus",
    "Violation",
    "ViolationTable",
    "fromPerUnit",
)
