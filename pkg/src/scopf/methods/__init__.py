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
Solution methods for the security-constrained optimal power flow
"""

from ._bd import FeasibilityCut, solveBD, solveSubproblem
from ._bddc import solveBDDC
from ._ccga import solveCCGA
from ._dispatch import solve, solvers
from ._ef import solveEF
from ._exceptions import (
    Infeasible,
    MethodError,
    NonconvergentCut,
    ResponseInfeasible,
    TimeLimit,
)
from ._formulation import FlowBlock, MasterProblem, addFlowBlock
from ._run import Observer, finalDispatch, masterLowerBound


__all__ = (
    "FeasibilityCut",
    "FlowBlock",
    "Infeasible",
    "MasterProblem",
    "MethodError",
    "NonconvergentCut",
    "Observer",
    "ResponseInfeasible",
    "TimeLimit",
    "addFlowBlock",
    "finalDispatch",
    "masterLowerBound",
    "solve",
    "solveBD",
    "solveBDDC",
    "solveCCGA",
    "solveEF",
    "solveSubproblem",
    "solvers",
)
