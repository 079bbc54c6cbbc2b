# -*- test-case-name: scopf.network.test.test_matrices -*-

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
Network matrices of the DC power flow model.

``A`` is the line-bus incidence matrix (+1 at the from-bus, -1 at the
to-bus), ``B`` the bus-generator assignment matrix and ``S`` the angle-to-flow
matrix, so that nodal balance reads ``B g - A' f = d`` and line flows are
``f = S theta``.
"""

import numpy as np
from numpy.typing import NDArray
from scipy.sparse import csr_matrix, diags

from ..model import PowerSystem


__all__ = ()


def buildIncidence(system: PowerSystem) -> tuple[csr_matrix, csr_matrix]:
    """
    Line-bus incidence matrix ``A`` and bus-generator matrix ``B``.
    """
    lineCount = system.lineCount
    lineIds = np.arange(lineCount)
    fromBus = np.array([line.fromBus for line in system.lines], dtype=np.int64)
    toBus = np.array([line.toBus for line in system.lines], dtype=np.int64)

    incidence = csr_matrix(
        (
            np.concatenate([np.ones(lineCount), -np.ones(lineCount)]),
            (np.concatenate([lineIds, lineIds]), np.concatenate([fromBus, toBus])),
        ),
        shape=(lineCount, system.busCount),
    )

    generatorCount = system.generatorCount
    assignment = csr_matrix(
        (
            np.ones(generatorCount),
            (system.generatorBus, np.arange(generatorCount)),
        ),
        shape=(system.busCount, generatorCount),
    )

    return incidence, assignment


def buildAngleToFlow(system: PowerSystem) -> csr_matrix:
    """
    Angle-to-flow matrix ``S`` (per-unit): row ``l`` is the susceptance of line
    ``l`` times the line's incidence row.
    """
    incidence, _ = buildIncidence(system)
    return csr_matrix(diags(system.susceptance) @ incidence)


def reducedSystem(system: PowerSystem) -> tuple[csr_matrix, csr_matrix]:
    """
    ``S`` with the slack-bus column removed, and ``A``.
    """
    incidence, _ = buildIncidence(system)
    angleToFlow = buildAngleToFlow(system)
    keep = np.flatnonzero(np.arange(system.busCount) != system.slackBus)
    return csr_matrix(angleToFlow[:, keep]), incidence


def busInjections(system: PowerSystem, generation: NDArray) -> NDArray:
    """
    Net nodal injection ``B g - d`` in MW.
    """
    injected = np.bincount(
        system.generatorBus,
        weights=np.asarray(generation, dtype=float),
        minlength=system.busCount,
    )
    return injected - system.netLoad
