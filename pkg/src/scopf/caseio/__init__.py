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
Case files and result files
"""

from ._exceptions import CaseError, IslandedNetwork, MalformedCase, UnsupportedCase
from ._matpower import (
    MatpowerTables,
    caseTextFromSystem,
    parseCase,
    readSidecar,
    readTables,
    systemFromTables,
    writeCase,
)
from ._outputs import (
    boundColumns,
    convergenceColumns,
    readDispatch,
    violationColumns,
    writeBoundTrace,
    writePTDF,
    writeSolution,
    writeViolationTable,
)


__all__ = (
    "CaseError",
    "IslandedNetwork",
    "MalformedCase",
    "MatpowerTables",
    "UnsupportedCase",
    "boundColumns",
    "caseTextFromSystem",
    "convergenceColumns",
    "parseCase",
    "readDispatch",
    "readSidecar",
    "readTables",
    "systemFromTables",
    "violationColumns",
    "writeBoundTrace",
    "writeCase",
    "writePTDF",
    "writeSolution",
    "writeViolationTable",
)
