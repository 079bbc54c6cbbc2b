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
Tests for scopf.backend._highs
"""

import numpy as np
from scipy.sparse import csr_matrix
from twisted.trial.unittest import SynchronousTestCase as TestCase

from .._exceptions import BackendUnavailable, ModelBuildError
from .._factory import newModel
from .._highs import HiGHSModel
from .._types import Sense, SolveStatus, VariableKind
from . import contract


__all__ = ()


class HiGHSContractTests(contract.BackendContractTests):
    """
    Backend behaviour of :class:`HiGHSModel`.
    """

    backend = "highs"


class HiGHSModelTests(TestCase):
    """
    Tests for :class:`HiGHSModel` specifics.
    """

    def test_factory(self) -> None:
        """
        :func:`newModel` creates HiGHS models by default.
        """
        self.assertIsInstance(newModel(), HiGHSModel)
        self.assertIsInstance(newModel(backend="HiGHS"), HiGHSModel)

    def test_unknownBackend(self) -> None:
        """
        An unknown backend name is reported as unavailable.
        """
        self.assertRaises(BackendUnavailable, newModel, backend="cplex")

    def test_addConstraints(self) -> None:
        """
        Blocks of rows map matrix columns onto model columns.
        """
        model = newModel()
        model.addVariable("unused")
        columns = model.addVariables("x", 3, upper=[1.0, 2.0, 3.0])
        rows = model.addConstraints(
            "pairs",
            columns,
            csr_matrix(np.array([[1.0, 1.0, 0.0], [0.0, 1.0, 1.0]])),
            Sense.lessEqual,
            [2.0, 4.0],
        )
        model.setObjective(columns, [1.0, 1.0, 1.0], maximize=True)

        result = model.solve()

        self.assertEqual(list(rows), [0, 1])
        self.assertTrue(model.hasRow("pairs[1]"))
        self.assertAlmostEqual(result.objective, 5.0)
        self.assertEqual(model.row("pairs[1]"), 1)

    def test_addConstraintsShape(self) -> None:
        """
        Row blocks must have one matrix column per variable.
        """
        model = newModel()
        columns = model.addVariables("x", 2)
        self.assertRaises(
            ModelBuildError,
            model.addConstraints,
            "rows",
            columns,
            np.ones((1, 3)),
            Sense.equal,
            0.0,
        )

    def test_objectiveConstant(self) -> None:
        """
        The objective constant is added to the reported objective.
        """
        model = newModel()
        x = model.addVariable("x", lower=1.0, upper=2.0)
        model.setObjective([x], [3.0], constant=10.0)

        self.assertAlmostEqual(model.solve().objective, 13.0)

    def test_fixedBinary(self) -> None:
        """
        Binary variables fixed by their bounds keep their value.
        """
        model = newModel()
        x = model.addVariable("x", lower=1.0, upper=1.0, kind=VariableKind.binary)
        y = model.addVariable("y", upper=5.0)
        model.addConstraint("link", [x, y], [3.0, 1.0], Sense.lessEqual, 4.0)
        model.setObjective([y], [1.0], maximize=True)

        result = model.solve()

        self.assertEqual(result.status, SolveStatus.optimal)
        self.assertAlmostEqual(result.value("x"), 1.0)
        self.assertAlmostEqual(result.value("y"), 1.0)
        self.assertIsNone(result.duals)

    def test_binaryBounds(self) -> None:
        """
        Binary variables must have bounds within ``[0, 1]``.
        """
        model = newModel()
        self.assertRaises(
            ModelBuildError,
            model.addVariable,
            "x",
            0.0,
            2.0,
            VariableKind.binary,
        )
