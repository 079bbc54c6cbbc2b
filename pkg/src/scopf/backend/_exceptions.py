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
Solver backend exceptions.
"""

from attrs import mutable


__all__ = ()


@mutable
class BackendError(RuntimeError):
    """
    Solver backend error.
    """

    message: str


@mutable
class BackendUnavailable(BackendError):
    """
    The requested solver backend is not installed or not known.
    """


@mutable
class UnknownVariable(BackendError):
    """
    A constraint or lookup refers to a variable not in the model.
    """


@mutable
class DuplicateName(BackendError):
    """
    A variable or constraint name is already registered in the model.
    """


@mutable
class UnknownParameter(BackendError):
    """
    A solver parameter is not recognized.
    """


@mutable
class ModelBuildError(BackendError):
    """
    Malformed variable or constraint data.
    """
