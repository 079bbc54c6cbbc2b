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
Tests for scopf.model._bounds and scopf.model._report
"""

from math import inf

from twisted.trial.unittest import SynchronousTestCase as TestCase

from .._bounds import BoundEvent, BoundKind, BoundTrace
from .._config import Method
from .._report import IterationRecord, RunReport, RunStatus


__all__ = ()


def event(wallTime: float, kind: BoundKind, value: float) -> BoundEvent:
    return BoundEvent(wallTime=wallTime, kind=kind, value=value)


class BoundTraceTests(TestCase):
    """
    Tests for :class:`BoundTrace`
    """

    def test_empty(self) -> None:
        """
        An empty trace has unbounded bounds and an infinite gap.
        """
        trace = BoundTrace()

        self.assertEqual(trace.lowerBound, -inf)
        self.assertEqual(trace.upperBound, inf)
        self.assertEqual(trace.finalGap, inf)

    def test_sortedByWallTime(self) -> None:
        """
        Events are ordered by wall time regardless of insertion order.
        """
        trace = BoundTrace(
            events=(
                event(3.0, BoundKind.ubFromP, 110.0),
                event(1.0, BoundKind.lbFromMaster, 90.0),
                event(2.0, BoundKind.lbFromMaster, 95.0),
            )
        )
        self.assertEqual([e.wallTime for e in trace], [1.0, 2.0, 3.0])

    def test_finalGap(self) -> None:
        """
        The final gap compares the best bounds on each side.
        """
        trace = BoundTrace(
            events=(
                event(1.0, BoundKind.lbFromMaster, 90.0),
                event(2.0, BoundKind.ubFromP, 120.0),
                event(3.0, BoundKind.lbFromMaster, 96.0),
                event(4.0, BoundKind.ubFromMaster, 100.0),
            )
        )

        self.assertEqual(trace.lowerBound, 96.0)
        self.assertEqual(trace.upperBound, 100.0)
        self.assertAlmostEqual(trace.finalGap, 0.04)

    def test_runningBounds(self) -> None:
        """
        Running bounds are monotone in the right direction.
        """
        trace = BoundTrace(
            events=(
                event(1.0, BoundKind.ubFromP, 120.0),
                event(2.0, BoundKind.ubFromP, 130.0),
                event(3.0, BoundKind.lbFromMaster, 90.0),
                event(4.0, BoundKind.lbFromMaster, 85.0),
            )
        )

        self.assertEqual(
            trace.runningBounds(),
            [
                (1.0, -inf, 120.0),
                (2.0, -inf, 120.0),
                (3.0, 90.0, 120.0),
                (4.0, 90.0, 120.0),
            ],
        )


class RunReportTests(TestCase):
    """
    Tests for :class:`RunReport`
    """

    def test_lastLowerBound(self) -> None:
        """
        :attr:`RunReport.lastLowerBound` is the latest recorded lower bound.
        """
        records = [
            IterationRecord(
                iteration=i,
                wallTime=i,
                objective=10.0 + i,
                alpha=1.0,
                cutsAdded=2,
                disjunctionCount=1,
                lowerBound=lb,
            )
            for i, lb in enumerate((9.0, 10.5, None))
        ]
        report = RunReport(
            method=Method.ccga, status=RunStatus.optimal, iterations=records
        )

        self.assertEqual(report.lastLowerBound, 10.5)
        self.assertEqual(report.objectives, (10.0, 11.0, 12.0))
        self.assertEqual(report.totalCuts, 6)

    def test_noLowerBound(self) -> None:
        """
        Without lower bounds, :attr:`RunReport.lastLowerBound` is -inf.
        """
        report = RunReport(method=Method.ef, status=RunStatus.infeasible)
        self.assertEqual(report.lastLowerBound, -inf)
