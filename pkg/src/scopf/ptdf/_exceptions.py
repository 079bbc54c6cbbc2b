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
PTDF exceptions.
"""

from attrs import mutable


__all__ = ()


@mutable
class PTDFError(ValueError):
    """
    PTDF computation or screening error.
    """

    message: str


@mutable
class SingularNetwork(PTDFError):
    """
    The reduced nodal susceptance matrix cannot be factored; the network is
    islanded.
    """


@mutable
class UnbalancedDispatch(PTDFError):
    """
    A post-contingency dispatch does not match the total load.
    """
