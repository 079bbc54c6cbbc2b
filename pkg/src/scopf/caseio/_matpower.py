# -*- test-case-name: scopf.caseio.test.test_matpower -*-

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
MATPOWER case files.

Only the subset a DC model needs is read: ``baseMVA`` and the ``bus``,
``gen``, ``branch`` and ``gencost`` tables.
"""

import re
from collections.abc import Mapping, Sequence
from pathlib import Path
from typing import Any

import numpy as np
from attrs import frozen
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from twisted.logger import Logger

from ..model import (
    Bus,
    ConfigurationError,
    Generator,
    Line,
    ModelError,
    PowerSystem,
    RunConfig,
)
from ..model.json import JSONCodecError, jsonTextFromObject, objectFromJSONText
from ._exceptions import IslandedNetwork, MalformedCase, UnsupportedCase


__all__ = ()


log = Logger()


# Column indices (0-based) of the MATPOWER tables

BUS_I, BUS_TYPE, PD = 0, 1, 2
REF_BUS, ISOLATED_BUS = 3, 4

GEN_BUS, GEN_STATUS, PMAX, PMIN = 0, 7, 8, 9

F_BUS, T_BUS, BR_X, RATE_A, TAP, SHIFT, BR_STATUS = 0, 1, 3, 5, 8, 9, 10

MODEL, NCOST, COST = 0, 3, 4
PW_LINEAR, POLYNOMIAL = 1, 2


_comment = re.compile(r"%.*$", re.MULTILINE)
_function = re.compile(r"function\s+\w+\s*=\s*(?P<name>\w+)")
_scalar = re.compile(r"mpc\.(?P<name>\w+)\s*=\s*(?P<value>[-+0-9.eE]+)\s*;")
_table = re.compile(r"mpc\.(?P<name>\w+)\s*=\s*\[(?P<body>[^\]]*)\]")
_rowSeparator = re.compile(r"[;\n]")


Row = tuple[float, ...]


@frozen(kw_only=True)
class MatpowerTables:
    """
    Raw numeric tables of a MATPOWER case.
    """

    name: str
    baseMVA: float
    bus: tuple[Row, ...]
    gen: tuple[Row, ...]
    branch: tuple[Row, ...]
    gencost: tuple[Row, ...]


def _rows(name: str, body: str) -> tuple[Row, ...]:
    rows = []
    for number, text in enumerate(_rowSeparator.split(body)):
        tokens = text.replace(",", " ").split()
        if not tokens:
            continue
        try:
            rows.append(tuple(float(token) for token in tokens))
        except ValueError as e:
            raise MalformedCase(
                f"Table mpc.{name}, row {number + 1}: {e}"
            ) from None
    return tuple(rows)


def _checkWidth(name: str, rows: Sequence[Row], width: int) -> None:
    for number, row in enumerate(rows):
        if len(row) < width:
            raise MalformedCase(
                f"Table mpc.{name}, row {number + 1} has {len(row)} columns; "
                f"at least {width} are required"
            )


def readTables(text: str) -> MatpowerTables:
    """
    Read the numeric tables of a MATPOWER case.
    """
    text = _comment.sub("", text)

    tables = {
        m.group("name"): _rows(m.group("name"), m.group("body"))
        for m in _table.finditer(text)
    }
    scalars = {m.group("name"): m.group("value") for m in _scalar.finditer(text)}

    if "baseMVA" not in scalars:
        raise MalformedCase("Case has no mpc.baseMVA")
    try:
        baseMVA = float(scalars["baseMVA"])
    except ValueError:
        raise MalformedCase(
            f"Invalid mpc.baseMVA: {scalars['baseMVA']!r}"
        ) from None

    for name in ("bus", "gen", "branch", "gencost"):
        if name not in tables:
            raise MalformedCase(f"Case has no mpc.{name} table")

    _checkWidth("bus", tables["bus"], PD + 1)
    _checkWidth("gen", tables["gen"], PMIN + 1)
    _checkWidth("branch", tables["branch"], BR_STATUS + 1)
    _checkWidth("gencost", tables["gencost"], COST)

    function = _function.search(text)

    return MatpowerTables(
        name="" if function is None else function.group("name"),
        baseMVA=baseMVA,
        bus=tables["bus"],
        gen=tables["gen"],
        branch=tables["branch"],
        gencost=tables["gencost"],
    )


def _linearCost(row: Row, number: int) -> float:
    """
    Linear coefficient of a polynomial cost row; higher-order terms are
    dropped.
    """
    model = int(row[MODEL])
    if model == PW_LINEAR:
        raise UnsupportedCase(
            f"Generator {number}: piecewise-linear costs are not supported"
        )
    if model != POLYNOMIAL:
        raise MalformedCase(f"Generator {number}: unknown cost model {model}")

    count = int(row[NCOST])
    coefficients = row[COST : COST + count]
    if len(coefficients) < count:
        raise MalformedCase(
            f"Generator {number}: cost row has {len(coefficients)} of "
            f"{count} coefficients"
        )

    # highest order first
    if count > 2 and any(c != 0 for c in coefficients[: count - 2]):
        log.warn(
            "Generator {number}: dropping nonlinear cost terms {terms}",
            number=number,
            terms=coefficients[: count - 2],
        )
    return float(coefficients[count - 2]) if count >= 2 else 0.0


def readSidecar(path: Path) -> dict[int, dict[str, float]]:
    """
    Read generator capacity and gamma overrides, keyed by 0-based generator
    id:
    ``{"generators": {"<id>": {"capacity": MW, "gamma": x}}}``.
    """
    try:
        document = objectFromJSONText(path.read_text())
    except JSONCodecError as e:
        raise MalformedCase(f"Sidecar {path}: {e}") from e

    entries = document.get("generators", {}) if isinstance(document, dict) else None
    if not isinstance(entries, dict):
        raise MalformedCase(f"Sidecar {path}: expected a generators object")

    overrides: dict[int, dict[str, float]] = {}
    for key, values in entries.items():
        if not isinstance(values, dict) or not set(values) <= {"capacity", "gamma"}:
            raise MalformedCase(
                f"Sidecar {path}: generator {key!r} must map to "
                f"capacity and/or gamma"
            )
        try:
            overrides[int(key)] = {k: float(v) for k, v in values.items()}
        except (TypeError, ValueError):
            raise MalformedCase(
                f"Sidecar {path}: invalid entry for generator {key!r}"
            ) from None
    return overrides


def _checkConnected(busCount: int, lines: Sequence[Line]) -> None:
    if busCount <= 1:
        return
    adjacency = coo_matrix(
        (
            np.ones(len(lines)),
            ([line.fromBus for line in lines], [line.toBus for line in lines]),
        ),
        shape=(busCount, busCount),
    )
    count, labels = connected_components(adjacency, directed=False)
    if count > 1:
        sizes = np.bincount(labels)
        raise IslandedNetwork(
            f"Network has {count} islands of sizes {sorted(sizes.tolist())}"
        )


def systemFromTables(
    tables: MatpowerTables,
    config: RunConfig | None = None,
    *,
    overrides: Mapping[int, Mapping[str, float]] | None = None,
) -> PowerSystem:
    """
    Build a power system from MATPOWER tables.

    Isolated buses, out-of-service generators and out-of-service branches are
    dropped; the remaining buses are numbered from 0 in file order.
    Generator capacity defaults to ``PMAX`` and gamma to the configured
    default; ``overrides`` replaces either, per generator id.
    """
    if config is None:
        config = RunConfig()
    if overrides is None:
        overrides = {}

    busRows = [row for row in tables.bus if int(row[BUS_TYPE]) != ISOLATED_BUS]
    numbers = [int(row[BUS_I]) for row in busRows]
    if len(set(numbers)) != len(numbers):
        raise MalformedCase("Bus numbers are not unique")
    busIndex = {number: index for index, number in enumerate(numbers)}

    def busFor(number: float, what: str) -> int:
        try:
            return busIndex[int(number)]
        except KeyError:
            raise MalformedCase(
                f"{what} refers to unknown or isolated bus {int(number)}"
            ) from None

    references = [
        i for i, row in enumerate(busRows) if int(row[BUS_TYPE]) == REF_BUS
    ]
    slackBus = references[0] if references else 0

    try:
        buses = [
            Bus(id=index, netLoad=row[PD], number=int(row[BUS_I]))
            for index, row in enumerate(busRows)
        ]

        lines: list[Line] = []
        for number, row in enumerate(tables.branch, start=1):
            if row[BR_STATUS] == 0:
                continue
            tap = row[TAP] or 1.0
            reactance = row[BR_X] * tap
            if row[RATE_A] <= 0:
                raise UnsupportedCase(
                    f"Branch {number} has no thermal limit (rateA = {row[RATE_A]})"
                )
            if not reactance > 0:
                raise UnsupportedCase(
                    f"Branch {number} has reactance {reactance}; "
                    f"the DC model needs a positive reactance"
                )
            if row[SHIFT] != 0:
                log.warn(
                    "Branch {number}: ignoring phase shift of {shift} degrees",
                    number=number,
                    shift=row[SHIFT],
                )
            lines.append(
                Line(
                    id=len(lines),
                    fromBus=busFor(row[F_BUS], f"Branch {number}"),
                    toBus=busFor(row[T_BUS], f"Branch {number}"),
                    reactance=reactance,
                    capacity=row[RATE_A],
                )
            )

        if len(tables.gencost) < len(tables.gen):
            raise MalformedCase(
                f"{len(tables.gen)} generators but only "
                f"{len(tables.gencost)} cost rows"
            )

        generators: list[Generator] = []
        for number, (row, costRow) in enumerate(
            zip(tables.gen, tables.gencost, strict=False), start=1
        ):
            if row[GEN_STATUS] <= 0:
                continue
            pMax, pMin = row[PMAX], row[PMIN]
            if pMax < 0:
                raise UnsupportedCase(
                    f"Generator {number} has negative PMAX {pMax}"
                )
            if pMin < 0:
                log.warn(
                    "Generator {number}: raising PMIN {pMin} to 0",
                    number=number,
                    pMin=pMin,
                )
                pMin = 0.0
            values = overrides.get(len(generators), {})
            generators.append(
                Generator(
                    id=len(generators),
                    bus=busFor(row[GEN_BUS], f"Generator {number}"),
                    cost=_linearCost(costRow, number),
                    gMin=pMin,
                    gMax=pMax,
                    capacity=values.get("capacity", pMax),
                    gamma=values.get("gamma", config.gammaDefault),
                )
            )
    except ModelError as e:
        raise MalformedCase(f"Invalid case data: {e}") from e

    unknown = sorted(set(overrides) - set(range(len(generators))))
    if unknown:
        raise MalformedCase(f"Overrides for unknown generators: {unknown}")

    if config.contingencies is None:
        contingencies = [g.id for g in generators if g.gMax > 0]
    else:
        contingencies = list(config.contingencies)
        invalid = [s for s in contingencies if not 0 <= s < len(generators)]
        if invalid:
            raise ConfigurationError(
                f"Contingencies {invalid} are not generator ids "
                f"(case has {len(generators)} in service)"
            )

    _checkConnected(len(buses), lines)

    system = PowerSystem(
        name=tables.name,
        buses=buses,
        lines=lines,
        generators=generators,
        contingencies=contingencies,
        baseMVA=tables.baseMVA,
        slackBus=slackBus,
    )
    log.info(
        "Case {name}: {buses} buses, {lines} lines, {generators} generators, "
        "{contingencies} contingencies",
        name=system.name,
        buses=system.busCount,
        lines=system.lineCount,
        generators=system.generatorCount,
        contingencies=len(system.contingencies),
    )
    return system


def parseCase(
    path: Path, config: RunConfig | None = None, *, sidecar: Path | None = None
) -> PowerSystem:
    """
    Read a MATPOWER case file into a power system.

    Capacity and gamma overrides are read from ``sidecar``, or from a JSON
    file next to the case with the same stem when one exists.
    """
    try:
        text = path.read_text()
    except UnicodeDecodeError as e:
        raise MalformedCase(f"Case {path} is not text: {e}") from e

    if sidecar is None and path.with_suffix(".json").exists():
        sidecar = path.with_suffix(".json")

    overrides = {} if sidecar is None else readSidecar(sidecar)
    tables = readTables(text)
    if not tables.name:
        tables = MatpowerTables(
            name=path.stem,
            baseMVA=tables.baseMVA,
            bus=tables.bus,
            gen=tables.gen,
            branch=tables.branch,
            gencost=tables.gencost,
        )
    return systemFromTables(tables, config, overrides=overrides)


def _number(value: Any) -> str:
    return repr(float(value))


def _tableLines(name: str, rows: Sequence[Sequence[str]]) -> list[str]:
    return [
        f"mpc.{name} = [",
        *("\t" + "\t".join(row) + ";" for row in rows),
        "];",
        "",
    ]


def caseTextFromSystem(system: PowerSystem) -> str:
    """
    MATPOWER text for a power system.
    Capacities and gammas have no MATPOWER column and are not written.
    """
    numbers = [
        bus.id + 1 if bus.number is None else bus.number for bus in system.buses
    ]
    name = re.sub(r"\W", "_", system.name) or "case"
    if not name[0].isalpha():
        name = f"case_{name}"

    lines = [
        f"function mpc = {name}",
        "mpc.version = '2';",
        f"mpc.baseMVA = {_number(system.baseMVA)};",
        "",
        *_tableLines(
            "bus",
            [
                [
                    str(numbers[bus.id]),
                    str(REF_BUS if bus.id == system.slackBus else 1),
                    _number(bus.netLoad),
                    *("0", "0", "0", "1", "1", "0", "0", "1", "1.1", "0.9"),
                ]
                for bus in system.buses
            ],
        ),
        *_tableLines(
            "gen",
            [
                [
                    str(numbers[g.bus]),
                    *("0", "0", "0", "0", "1"),
                    _number(system.baseMVA),
                    "1",
                    _number(g.gMax),
                    _number(g.gMin),
                ]
                for g in system.generators
            ],
        ),
        *_tableLines(
            "branch",
            [
                [
                    str(numbers[line.fromBus]),
                    str(numbers[line.toBus]),
                    "0",
                    _number(line.reactance),
                    "0",
                    *(_number(line.capacity),) * 3,
                    *("0", "0", "1", "-360", "360"),
                ]
                for line in system.lines
            ],
        ),
        *_tableLines(
            "gencost",
            [["2", "0", "0", "2", _number(g.cost), "0"] for g in system.generators],
        ),
    ]
    return "\n".join(lines)


def writeCase(system: PowerSystem, path: Path, *, gammaDefault: float = 0.05) -> None:
    """
    Write a power system as a MATPOWER case, and a sidecar next to it for
    generators whose capacity differs from their upper limit or whose gamma
    differs from ``gammaDefault``.
    """
    path.write_text(caseTextFromSystem(system))

    overrides = {}
    for g in system.generators:
        values = {}
        if g.capacity != g.gMax:
            values["capacity"] = g.capacity
        if g.gamma != gammaDefault:
            values["gamma"] = g.gamma
        if values:
            overrides[str(g.id)] = values

    if overrides:
        path.with_suffix(".json").write_text(
            jsonTextFromObject({"generators": overrides}, pretty=True)
        )
