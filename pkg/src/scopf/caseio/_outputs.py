# -*- test-case-name: scopf.caseio.test.test_outputs -*-

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
Solution, convergence, violation, bound and PTDF files.
"""

from csv import writer as csvWriter
from pathlib import Path
from typing import Any

from arrow import utcnow
from numpy.typing import NDArray
from twisted.logger import Logger

from ..model import BoundTrace, DispatchState, RunReport, ViolationTable
from ..model.json import (
    IterationRecordJSONKey,
    JSONCodecError,
    jsonObjectFromModelObject,
    jsonTextFromObject,
    modelObjectFromJSONObject,
    objectFromJSONText,
)
from ._exceptions import MalformedCase


__all__ = ()


log = Logger()


solutionFileName = "solution.json"
convergenceFileName = "convergence.csv"

convergenceColumns = tuple(key.value for key in IterationRecordJSONKey)
violationColumns = ("contingency", "line", "alpha_mw")
boundColumns = ("wall_s", "kind", "value", "p")


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def writeSolution(
    report: RunReport, dispatch: DispatchState | None, directory: Path
) -> tuple[Path, Path]:
    """
    Write the solution JSON and the convergence CSV of a run into
    ``directory``, creating it if needed.
    A run that stopped without a dispatch gets a solution JSON holding only
    its status.

    Returns the paths of the two files.
    """
    directory.mkdir(parents=True, exist_ok=True)
    solutionPath = directory / solutionFileName
    convergencePath = directory / convergenceFileName

    document: dict[str, Any] = {}
    if dispatch is not None:
        document.update(jsonObjectFromModelObject(dispatch))  # type: ignore[arg-type]
    document.update(
        method=report.method.value,
        status=report.status.value,
        iterations=len(report.iterations),
        disjunction_states=list(report.disjunctionStates),
        wall_s=report.wallTime,
        written=jsonObjectFromModelObject(utcnow()),
    )
    solutionPath.write_text(jsonTextFromObject(document, pretty=True) + "\n")

    with convergencePath.open("w", newline="") as f:
        out = csvWriter(f)
        out.writerow(convergenceColumns)
        for record in report.iterations:
            out.writerow(
                _cell(getattr(record, key.name)) for key in IterationRecordJSONKey
            )

    log.info(
        "Wrote {solution} and {convergence} ({count} iterations)",
        solution=solutionPath,
        convergence=convergencePath,
        count=len(report.iterations),
    )
    return solutionPath, convergencePath


def readDispatch(path: Path) -> DispatchState:
    """
    Read the dispatch back from a solution JSON file.
    """
    try:
        return modelObjectFromJSONObject(
            objectFromJSONText(path.read_text()), DispatchState
        )
    except JSONCodecError as e:
        raise MalformedCase(f"Solution {path}: {e}") from e


def writeViolationTable(table: ViolationTable, path: Path) -> None:
    """
    Write a violation table as tab-separated values, largest violation first.
    """
    with path.open("w", newline="") as f:
        out = csvWriter(f, delimiter="\t")
        out.writerow(violationColumns)
        for violation in table:
            out.writerow(
                (violation.contingency, violation.line, _cell(violation.alpha))
            )


def writeBoundTrace(trace: BoundTrace, path: Path) -> None:
    """
    Write bound events as CSV, in wall-time order.
    """
    with path.open("w", newline="") as f:
        out = csvWriter(f)
        out.writerow(boundColumns)
        for event in trace:
            out.writerow(
                (
                    _cell(event.wallTime),
                    event.kind.value,
                    _cell(event.value),
                    _cell(event.p),
                )
            )


def writePTDF(ptdf: NDArray, path: Path) -> None:
    """
    Write a PTDF matrix as CSV, one row per line and one column per bus.
    """
    with path.open("w", newline="") as f:
        out = csvWriter(f)
        out.writerow(f"bus_{bus}" for bus in range(ptdf.shape[1]))
        for row in ptdf:
            out.writerow(_cell(float(value)) for value in row)
