# -*- test-case-name: scopf.methods.test.test_methods -*-

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
Method selection.
"""

from collections.abc import Callable, Mapping

from ..model import DispatchState, Method, PowerSystem, RunConfig, RunReport
from ..ptdf import PtdfBundle
from ._bd import solveBD
from ._bddc import solveBDDC
from ._ccga import solveCCGA
from ._ef import solveEF
from ._run import Observer


__all__ = ()


Solver = Callable[..., tuple[DispatchState, RunReport]]

solvers: Mapping[Method, Solver] = {
    Method.ef: solveEF,
    Method.bd: solveBD,
    Method.bddc: solveBDDC,
    Method.ccga: solveCCGA,
}


def solve(
    system: PowerSystem,
    config: RunConfig,
    *,
    observer: Observer | None = None,
    bundle: PtdfBundle | None = None,
) -> tuple[DispatchState, RunReport]:
    """
    Solve with the method named by ``config``.
    """
    return solvers[config.method](system, config, observer=observer, bundle=bundle)
