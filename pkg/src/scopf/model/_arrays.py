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
Read-only numpy arrays as attrs fields.
"""

from collections.abc import Sequence
from typing import Any

import numpy as np
from attrs import cmp_using, field
from numpy.typing import NDArray


__all__ = ()


def readOnlyArray(values: Sequence[Any] | NDArray, dtype: Any = float) -> NDArray:
    """
    Copy ``values`` into a new array that cannot be written to.
    """
    array = np.array(values, dtype=dtype)
    array.setflags(write=False)
    return array


def readOnlyBooleans(values: Sequence[Any] | NDArray) -> NDArray:
    return readOnlyArray(values, dtype=bool)


def arrayField(*, dtype: Any = float) -> Any:
    """
    attrs field holding a read-only array, compared by value and excluded from
    hashing.
    """
    return field(
        converter=readOnlyBooleans if dtype is bool else readOnlyArray,
        eq=cmp_using(eq=np.array_equal),
        hash=False,
    )
