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
Tests for scopf.methods._ccga
"""

from twisted.trial.unittest import SynchronousTestCase as TestCase

from ...model import IterationRecord, RunConfig, RunStatus
from ...model.test.systems import cappedResponse, singleGenerator, threeBusTriangle
from .._ccga import solveCCGA
from .._ef import solveEF
from .._exceptions import Infeasible, TimeLimit
from .._run import masterLowerBound


__all__ = ()


tightConfig = RunConfig(mipGap=1e-6)


class CCGATests(TestCase):
    """
    Tests for :func:`solveCCGA`
    """

    def test_noContingencies(self) -> None:
        """
        Without contingencies one master solve finds nothing to screen.
        """
        state, report = solveCCGA(threeBusTriangle(), RunConfig())

        (record,) = report.iterations
        self.assertEqual(record.alpha, 0.0)
        self.assertEqual(record.cutsAdded, 0)
        self.assertAlmostEqual(state.objective, 1500.0, delta=1e-6)

    def test_tightRelaxation(self) -> None:
        """
        When response limits alone determine the optimum, no disjunctions are
        imported.
        """
        state, report = solveCCGA(threeBusTriangle(range(3)), tightConfig)

        self.assertEqual(len(report.iterations), 1)
        self.assertEqual(report.disjunctionStates, ())
        self.assertAlmostEqual(state.objective, 2250.0, delta=1e-3)
        self.assertTrue(state.feasible)

    def test_lineLimits(self) -> None:
        """
        An overload after the outage of generator 1 imports its disjunctions
        and cuts; the final dispatch is feasible.
        """
        state, report = solveCCGA(
            threeBusTriangle(range(3), capacity=60.0), tightConfig
        )

        first = report.iterations[0]
        self.assertAlmostEqual(first.objective, 2250.0, delta=1e-3)
        self.assertAlmostEqual(first.alpha, 10.0 / 3.0, delta=1e-6)
        self.assertGreater(first.cutsAdded, 0)
        self.assertEqual(report.disjunctionStates[0], 1)
        self.assertLess(report.iterations[-1].alpha, tightConfig.epsViolation)
        self.assertEqual(report.status, RunStatus.optimal)
        self.assertTrue(state.feasible)

    def test_monotone(self) -> None:
        """
        Master objectives never decrease.
        """
        for system in (
            threeBusTriangle(range(3), capacity=60.0),
            threeBusTriangle(range(3), capacity=55.0),
            cappedResponse(),
        ):
            _, report = solveCCGA(system, tightConfig)
            objectives = report.objectives
            for before, after in zip(objectives, objectives[1:]):
                self.assertGreaterEqual(after, before - 1e-6 * abs(before))

    def test_lowerBound(self) -> None:
        """
        Master bounds are lower bounds on the optimal cost.
        """
        system = threeBusTriangle(range(3), capacity=60.0)
        reference, _ = solveEF(system, tightConfig)

        _, report = solveCCGA(system, tightConfig)

        bounds = [r.lowerBound for r in report.iterations]
        self.assertNotIn(None, bounds)
        self.assertLessEqual(
            masterLowerBound(report), reference.objective * (1 + 1e-6)
        )
        self.assertAlmostEqual(
            masterLowerBound(report),
            report.iterations[-1].objective,
            delta=1e-5 * report.iterations[-1].objective,
        )

    def test_responseCap(self) -> None:
        """
        A unit at its upper limit covers none of an outage.
        """
        state, report = solveCCGA(cappedResponse(), tightConfig)

        self.assertAlmostEqual(state.objective, 2400.0, delta=1e-3)
        self.assertFalse(state.outcomeFor(1).following[0])
        self.assertEqual(report.iterations[-1].upperBound, report.objectives[-1])

    def test_linearUnits(self) -> None:
        """
        Forcing a unit to follow its linear response restricts the problem:
        the cost rises and no lower bounds are recorded.
        """
        state, report = solveCCGA(cappedResponse(), tightConfig, linearUnits={0})

        self.assertAlmostEqual(state.objective, 2500.0, delta=1e-3)
        self.assertTrue(state.feasible)
        self.assertEqual(report.disjunctionStates, (1,))
        self.assertEqual(len(report.iterations), 2)
        self.assertEqual([r.lowerBound for r in report.iterations], [None, None])

    def test_observer(self) -> None:
        """
        The observer sees every iteration as it is recorded.
        """
        seen: list[IterationRecord] = []

        _, report = solveCCGA(
            threeBusTriangle(range(3), capacity=60.0),
            tightConfig,
            observer=seen.append,
        )

        self.assertEqual(tuple(seen), report.iterations)

    def test_iterationLimit(self) -> None:
        """
        Running out of iterations stops the run with its partial report.
        """
        e = self.assertRaises(
            TimeLimit,
            solveCCGA,
            threeBusTriangle(range(3), capacity=60.0),
            RunConfig(maxIterations=1),
        )

        assert e.report is not None
        self.assertEqual(len(e.report.iterations), 1)
        self.assertEqual(e.report.status, RunStatus.timeLimit)

    def test_infeasible(self) -> None:
        """
        An infeasible master problem stops the run.
        """
        self.assertRaises(Infeasible, solveCCGA, singleGenerator(), RunConfig())
