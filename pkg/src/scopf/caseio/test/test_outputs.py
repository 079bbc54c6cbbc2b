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
Tests for scopf.caseio._outputs
"""

from csv import reader as csvReader
from pathlib import Path

import numpy as np
from attrs import evolve
from twisted.trial.unittest import SynchronousTestCase as TestCase

from ...model import (
    BoundEvent,
    BoundKind,
    BoundTrace,
    DispatchState,
    IterationRecord,
    Method,
    ResponseOutcome,
    RunReport,
    RunStatus,
    Violation,
    ViolationTable,
)
from ...model.json import objectFromJSONText
from .._exceptions import MalformedCase
from .._outputs import (
    readDispatch,
    writeBoundTrace,
    writePTDF,
    writeSolution,
    writeViolationTable,
)


__all__ = ()


def readRows(path: Path, delimiter: str = ",") -> list[list[str]]:
    with path.open(newline="") as f:
        return list(csvReader(f, delimiter=delimiter))


def toyDispatch() -> DispatchState:
    return DispatchState(
        generation=np.array([90.0, 10.0]),
        outcomes=[
            ResponseOutcome(
                contingency=1,
                signal=0.5,
                generation=np.array([100.0, 0.0]),
                following=np.array([True, False]),
                imbalance=0.0,
                converged=True,
                iterations=1,
            )
        ],
        objective=1100.0,
        feasible=True,
        maxViolation=0.0,
    )


def toyReport(records: int = 2) -> RunReport:
    return RunReport(
        method=Method.ccga,
        status=RunStatus.optimal,
        iterations=[
            IterationRecord(
                iteration=j,
                wallTime=0.1 * (j + 1),
                objective=1000.0 + 100 * j,
                alpha=7.0 if j == 0 else 0.0,
                cutsAdded=2 if j == 0 else 0,
                disjunctionCount=j,
                lowerBound=1000.0 + 100 * j,
            )
            for j in range(records)
        ],
        disjunctionStates=[1],
        wallTime=0.25,
    )


class WriteSolutionTests(TestCase):
    """
    Tests for :func:`writeSolution` and :func:`readDispatch`
    """

    def test_files(self) -> None:
        """
        The solution JSON holds the dispatch and status, the convergence CSV
        one row per iteration.
        """
        directory = Path(self.mktemp())

        solution, convergence = writeSolution(toyReport(), toyDispatch(), directory)

        document = objectFromJSONText(solution.read_text())
        self.assertEqual(document["status"], "optimal_within_gap")
        self.assertEqual(document["method"], "ccga")
        self.assertEqual(document["g"], [90.0, 10.0])
        self.assertEqual(document["objective"], 1100.0)
        self.assertEqual(document["contingencies"][0]["n_s"], 0.5)
        self.assertEqual(document["contingencies"][0]["x_s"], [True, False])
        self.assertIn("written", document)

        rows = readRows(convergence)
        self.assertEqual(
            rows[0],
            [
                "iter",
                "wall_s",
                "objective",
                "alpha_mw",
                "cuts_added",
                "S_size",
                "lb",
                "ub",
            ],
        )
        self.assertEqual(len(rows), 3)
        self.assertEqual(rows[1][:2], ["0", "0.1"])
        self.assertEqual(rows[2][-1], "")

    def test_emptyLog(self) -> None:
        """
        A run without iterations has a header-only convergence log.
        """
        _, convergence = writeSolution(
            toyReport(0), toyDispatch(), Path(self.mktemp())
        )
        self.assertEqual(len(readRows(convergence)), 1)

    def test_withoutDispatch(self) -> None:
        """
        A run that stopped without a dispatch writes its status and
        iterations, and its solution cannot be read back as a dispatch.
        """
        report = evolve(toyReport(), status=RunStatus.timeLimit)

        solution, convergence = writeSolution(report, None, Path(self.mktemp()))

        document = objectFromJSONText(solution.read_text())
        self.assertEqual(document["status"], "time_limit")
        self.assertEqual(document["iterations"], 2)
        self.assertNotIn("g", document)
        self.assertEqual(len(readRows(convergence)), 3)
        self.assertRaises(MalformedCase, readDispatch, solution)

    def test_readDispatch(self) -> None:
        """
        The dispatch read back from a solution equals the one written.
        """
        solution, _ = writeSolution(toyReport(), toyDispatch(), Path(self.mktemp()))
        self.assertEqual(readDispatch(solution), toyDispatch())

    def test_readInvalid(self) -> None:
        """
        Files that are not solutions are rejected.
        """
        path = Path(self.mktemp())
        path.write_text('{"g": [1, 2]}')
        self.assertRaises(MalformedCase, readDispatch, path)


class WriteTableTests(TestCase):
    """
    Tests for the violation, bound and PTDF writers.
    """

    def test_violations(self) -> None:
        """
        Violations are written largest first, tab-separated.
        """
        path = Path(self.mktemp())
        table = ViolationTable(
            entries=[
                Violation(contingency=2, line=1, alpha=0.5),
                Violation(contingency=0, line=3, alpha=7.0),
            ]
        )

        writeViolationTable(table, path)

        self.assertEqual(
            readRows(path, "\t"),
            [
                ["contingency", "line", "alpha_mw"],
                ["0", "3", "7.0"],
                ["2", "1", "0.5"],
            ],
        )

    def test_bounds(self) -> None:
        """
        Bound events are written in wall-time order.
        """
        path = Path(self.mktemp())
        trace = BoundTrace(
            events=[
                BoundEvent(wallTime=2.0, kind=BoundKind.ubFromP, value=110.0, p=10.0),
                BoundEvent(wallTime=1.0, kind=BoundKind.lbFromMaster, value=100.0),
            ]
        )

        writeBoundTrace(trace, path)

        self.assertEqual(
            readRows(path),
            [
                ["wall_s", "kind", "value", "p"],
                ["1.0", "lb_from_master", "100.0", ""],
                ["2.0", "ub_from_p", "110.0", "10.0"],
            ],
        )

    def test_ptdf(self) -> None:
        """
        The PTDF dump has one row per line and one column per bus.
        """
        path = Path(self.mktemp())

        writePTDF(np.array([[0.0, -1.0]]), path)

        self.assertEqual(readRows(path), [["bus_0", "bus_1"], ["0.0", "-1.0"]])
