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
Solution method exceptions.
"""

from attrs import field, mutable

from ..model import RunReport


__all__ = ()


@mutable
class MethodError(RuntimeError):
    """
    A method run stopped without a dispatch.
    ``report`` holds the iterations completed before it stopped.
    """

    message: str
    report: RunReport | None = field(default=None, kw_only=True)


@mutable
class Infeasible(MethodError):
    """
    No dispatch satisfies every contingency.
    """


@mutable
class TimeLimit(MethodError):
    """
    The time or iteration limit was reached before convergence.
    """


@mutable
class NonconvergentCut(MethodError):
    """
    An iteration found violations but could not add a constraint that cuts
    off the current master solution.
    """


@mutable
class ResponseInfeasible(MethodError):
    """
    The response to a contingency cannot balance the system, although its
    disjunctions are already part of the master problem.
    """

    contingency: int = field(kw_only=True)
