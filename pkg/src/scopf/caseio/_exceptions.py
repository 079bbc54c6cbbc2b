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
Case file exceptions.
"""

from attrs import mutable


__all__ = ()


@mutable
class CaseError(ValueError):
    """
    Case file could not be turned into a power system.
    """

    message: str


@mutable
class MalformedCase(CaseError):
    """
    Case file text or sidecar data could not be parsed.
    """


@mutable
class UnsupportedCase(CaseError):
    """
    Case file uses data the DC model cannot represent.
    """


@mutable
class IslandedNetwork(CaseError):
    """
    Case network falls apart into more than one island.
    """
