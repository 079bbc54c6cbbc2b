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
Tests for scopf.model._system
"""

import numpy as np
from hypothesis import given
from hypothesis.strategies import floats
from scipy.sparse import csr_matrix, issparse
from twisted.trial.unittest import SynchronousTestCase as TestCase

from .._exceptions import ModelError
from .._system import Bus, Generator, Line, PowerSystem, fromPerUnit
from ..strategies import generators, powerSystems
from .systems import fiveBusMeshed, twoBus


__all__ = ()


class LineTests(TestCase):
    """
    Tests for :class:`Line`
    """

    def test_susceptance(self) -> None:
        """
        :attr:`Line.susceptance` is the reciprocal of the reactance.
        """
        line = Line(id=0, fromBus=0, toBus=1, reactance=0.1, capacity=10)
        self.assertAlmostEqual(line.susceptance, 10.0)

    def test_selfLoop(self) -> None:
        """
        A line may not connect a bus to itself.
        """
        self.assertRaises(
            ModelError, Line, id=0, fromBus=1, toBus=1, reactance=0.1, capacity=10
        )

    def test_nonPositive(self) -> None:
        """
        Reactance and capacity must be positive.
        """
        self.assertRaises(
            ModelError, Line, id=0, fromBus=0, toBus=1, reactance=0.0, capacity=10
        )
        self.assertRaises(
            ModelError, Line, id=0, fromBus=0, toBus=1, reactance=0.1, capacity=0
        )


class GeneratorTests(TestCase):
    """
    Tests for :class:`Generator`
    """

    @given(generators())
    def test_responseLimit(self, generator: Generator) -> None:
        """
        :attr:`Generator.responseLimit` is gamma times capacity exactly.
        """
        self.assertEqual(
            generator.responseLimit, generator.gamma * generator.capacity
        )

    def test_limitsOrdered(self) -> None:
        """
        Generator limits must satisfy ``gMin <= gMax <= capacity``.
        """
        for gMin, gMax, capacity in ((10, 5, 20), (0, 30, 20), (-1, 5, 20)):
            self.assertRaises(
                ModelError,
                Generator,
                id=0,
                bus=0,
                cost=1,
                gMin=gMin,
                gMax=gMax,
                capacity=capacity,
                gamma=0.05,
            )

    def test_gammaRange(self) -> None:
        """
        Gamma must lie in ``[0, 1]``.
        """
        self.assertRaises(
            ModelError,
            Generator,
            id=0,
            bus=0,
            cost=1,
            gMin=0,
            gMax=5,
            capacity=5,
            gamma=1.5,
        )


class PowerSystemTests(TestCase):
    """
    Tests for :class:`PowerSystem`
    """

    def test_arrays(self) -> None:
        """
        Derived arrays follow generator and line order.
        """
        system = fiveBusMeshed()

        self.assertEqual(system.busCount, 5)
        self.assertEqual(system.lineCount, 6)
        self.assertEqual(system.generatorCount, 4)
        self.assertEqual(system.totalLoad, 300.0)
        self.assertEqual(list(system.generatorBus), [0, 1, 3, 4])
        self.assertTrue(np.allclose(system.responseLimit, [40.0, 30.0, 30.0, 20.0]))
        self.assertTrue(
            np.allclose(system.susceptance, [10.0, 10.0, 1 / 0.15, 10.0, 5.0, 10.0])
        )

    def test_arraysReadOnly(self) -> None:
        """
        Derived arrays cannot be written to.
        """
        system = twoBus()
        self.assertRaises(ValueError, system.gMax.__setitem__, 0, 1.0)

    def test_idsContiguous(self) -> None:
        """
        Element ids must match their positions.
        """
        system = twoBus()
        self.assertRaises(
            ModelError,
            PowerSystem,
            buses=(system.buses[1], system.buses[0]),
            lines=system.lines,
            generators=system.generators,
            contingencies=(),
        )

    def test_isolatedBus(self) -> None:
        """
        Every bus must be touched by a line.
        """
        system = twoBus()
        self.assertRaises(
            ModelError,
            PowerSystem,
            buses=(*system.buses, Bus(id=2, netLoad=0)),
            lines=system.lines,
            generators=system.generators,
            contingencies=(),
        )

    def test_unknownContingency(self) -> None:
        """
        Contingencies must be generator ids.
        """
        self.assertRaises(ModelError, twoBus, contingencies=(2,))
        self.assertRaises(ModelError, twoBus, contingencies=(0, 0))

    def test_withContingencies(self) -> None:
        """
        :meth:`PowerSystem.withContingencies` replaces only the contingencies.
        """
        system = twoBus()
        other = system.withContingencies([1])

        self.assertEqual(other.contingencies, (1,))
        self.assertEqual(other.generators, system.generators)
        self.assertNotEqual(other, system)

    @given(powerSystems())
    def test_susceptancePositive(self, system: PowerSystem) -> None:
        """
        Every generated system has positive susceptances and a valid slack.
        """
        self.assertTrue((system.susceptance > 0).all())
        self.assertLess(system.slackBus, system.busCount)


class PerUnitTests(TestCase):
    """
    Tests for :func:`fromPerUnit`
    """

    @given(
        floats(min_value=-1e3, max_value=1e3),
        floats(min_value=1.0, max_value=1e4),
    )
    def test_scalar(self, pu: float, base: float) -> None:
        """
        A per-unit value scales by the base.
        """
        self.assertEqual(fromPerUnit(pu, base), pu * base)

    def test_arrays(self) -> None:
        """
        Conversion applies elementwise to arrays.
        """
        self.assertTrue(
            np.allclose(fromPerUnit(np.array([1.0, 0.5]), 100.0), [100.0, 50.0])
        )

    def test_sparse(self) -> None:
        """
        Sparse matrices stay sparse.
        """
        converted = fromPerUnit(csr_matrix(np.array([[0.0, 2.0], [1.0, 0.0]])), 50.0)

        self.assertTrue(issparse(converted))
        self.assertTrue(
            np.array_equal(converted.toarray(), [[0.0, 100.0], [50.0, 0.0]])
        )
