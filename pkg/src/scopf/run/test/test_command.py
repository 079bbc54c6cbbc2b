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
Tests for scopf.run._command
"""

import sys
from collections.abc import Callable, Mapping, Sequence
from csv import reader as csvReader
from pathlib import Path
from typing import Any

import numpy as np
from click import BadParameter, NoSuchOption, UsageError
from twisted.internet.defer import ensureDeferred
from twisted.python.failure import Failure
from twisted.trial.unittest import SynchronousTestCase as TestCase

from ...caseio import writeCase, writeSolution
from ...ext.click import ClickTestResult, clickTestRun
from ...methods import Infeasible
from ...model import (
    BoundEvent,
    BoundKind,
    BoundTrace,
    DispatchState,
    Method,
    ModelError,
    PowerSystem,
    ResponseOutcome,
    RunConfig,
    RunReport,
    RunStatus,
)
from ...model.json import objectFromJSONText
from ...model.test.systems import singleGenerator, threeBusTriangle
from .. import _command
from .._command import Command, boundsFileName


__all__ = ()


def readRows(path: Path, delimiter: str = ",") -> list[list[str]]:
    with path.open(newline="") as f:
        return list(csvReader(f, delimiter=delimiter))


def triangleDispatch(postContingency: Sequence[float]) -> DispatchState:
    """
    Triangle dispatch at ``(75, 75, 0)`` with the given generation after the
    outage of generator 1.
    """
    return DispatchState(
        generation=np.array([75.0, 75.0, 0.0]),
        outcomes=[
            ResponseOutcome(
                contingency=1,
                signal=0.5,
                generation=np.array(postContingency),
                following=np.array([True, False, True]),
                imbalance=0.0,
                converged=True,
            )
        ],
        objective=2250.0,
        feasible=False,
        maxViolation=20.0,
    )


class CommandTestCase(TestCase):
    """
    Runs commands in a temporary directory.
    """

    def setUp(self) -> None:
        self.directory = Path(self.mktemp())
        self.directory.mkdir()
        self.configPath = self.directory / "missing.toml"

    def writeConfig(self, text: str) -> None:
        self.configPath = self.directory / "scopf.toml"
        self.configPath.write_text(text)

    def caseFile(self, system: PowerSystem, name: str = "case") -> Path:
        path = self.directory / f"{name}.m"
        writeCase(system, path)
        return path

    def runCommand(
        self, *arguments: str, environment: Mapping[str, str] | None = None
    ) -> ClickTestResult:
        return clickTestRun(
            Command.main,
            ["scopf", "--config", str(self.configPath), *arguments],
            environment=environment,
        )

    def errorFrom(self, result: ClickTestResult) -> dict[str, Any]:
        errors = result.echoed(err=True)
        self.assertEqual(len(errors), 1, errors)
        error = objectFromJSONText(errors[0])
        self.assertEqual(sorted(error), ["error", "message"])
        return dict(error)


class CommandTests(CommandTestCase):
    """
    Tests for :class:`Command`
    """

    def test_loggingStarted(self) -> None:
        """
        Each run starts logging once.
        """
        result = self.runCommand("--log-level", "debug", "solve", "--help")

        self.assertEqual(result.exitCode, 0)
        self.assertEqual(len(result.beginLoggingToCalls), 1)

    def test_unknownSubcommand(self) -> None:
        """
        An unknown subcommand is a usage error.
        """
        result = self.runCommand("optimize")

        self.assertEqual(result.exitCode, 1)
        self.assertEqual(self.errorFrom(result)["error"], "UsageError")

    def test_usageErrorName(self) -> None:
        """
        Usage errors of every kind are reported as ``UsageError``.
        """
        for error in (UsageError("bad"), BadParameter("bad"), NoSuchOption("--x")):
            self.assertEqual(_command.errorName(error), "UsageError")

        self.assertEqual(_command.errorName(ModelError("bad")), "ModelError")

    def test_invalidConfigFile(self) -> None:
        """
        A configuration file that is not TOML is reported as an error.
        """
        self.writeConfig("[Solver\n")
        case = self.caseFile(threeBusTriangle(range(3)))

        result = self.runCommand("solve", "--case", str(case))

        self.assertEqual(result.exitCode, 1)
        self.assertEqual(self.errorFrom(result)["error"], "ConfigFileError")


class SolveTests(CommandTestCase):
    """
    Tests for the ``solve`` subcommand.
    """

    def solveTriangle(self, *arguments: str) -> tuple[ClickTestResult, Path]:
        case = self.caseFile(threeBusTriangle(range(3)))
        output = self.directory / "out"
        result = self.runCommand(
            "solve", "--case", str(case), "--output", str(output), *arguments
        )
        return result, output

    def test_feasible(self) -> None:
        """
        A feasible solve exits with 0 and writes the solution and the
        convergence history, one row per iteration.
        """
        result, output = self.solveTriangle("--method", "ef")

        self.assertEqual(result.exitCode, 0, result.echoed(err=True))

        solution = objectFromJSONText((output / "solution.json").read_text())
        self.assertEqual(solution["method"], "ef")
        self.assertEqual(solution["status"], "optimal_within_gap")
        self.assertTrue(solution["feasible"])
        self.assertAlmostEqual(solution["objective"], 2250.0, delta=0.005 * 2250)

        rows = readRows(output / "convergence.csv")
        self.assertEqual(len(rows), 1 + solution["iterations"])

        summary = result.stdout.getvalue()
        self.assertIn("Objective", summary)
        self.assertIn("optimal_within_gap", summary)

    def test_ccgaConvergenceRows(self) -> None:
        """
        The convergence history of a CCGA solve has a row per iteration.
        """
        result, output = self.solveTriangle()

        self.assertEqual(result.exitCode, 0, result.echoed(err=True))

        solution = objectFromJSONText((output / "solution.json").read_text())
        self.assertEqual(solution["method"], "ccga")
        rows = readRows(output / "convergence.csv")
        self.assertEqual(len(rows), 1 + solution["iterations"])
        self.assertGreaterEqual(solution["iterations"], 1)

    def test_infeasible(self) -> None:
        """
        A case without a feasible dispatch exits with 2 and still writes its
        status and convergence history.
        """
        case = self.caseFile(singleGenerator())

        result = self.runCommand(
            "solve",
            "--case",
            str(case),
            "--method",
            "ef",
            "--output",
            str(self.directory / "out"),
        )

        self.assertEqual(result.exitCode, 2)
        self.assertEqual(self.errorFrom(result)["error"], "Infeasible")

        output = self.directory / "out"
        solution = objectFromJSONText((output / "solution.json").read_text())
        self.assertEqual(solution["status"], "infeasible")
        self.assertEqual(solution["method"], "ef")
        self.assertNotIn("g", solution)
        self.assertEqual(readRows(output / "convergence.csv")[0][0], "iter")

    def test_iterationLimit(self) -> None:
        """
        Running out of iterations exits with 3 and writes the iterations
        completed.
        """
        case = self.caseFile(threeBusTriangle(range(3), capacity=60.0))

        result = self.runCommand(
            "solve",
            "--case",
            str(case),
            "--max-iterations",
            "1",
            "--output",
            str(self.directory / "out"),
        )

        self.assertEqual(result.exitCode, 3)
        self.assertEqual(self.errorFrom(result)["error"], "TimeLimit")
        self.assertIn("time_limit", result.stdout.getvalue())

        output = self.directory / "out"
        solution = objectFromJSONText((output / "solution.json").read_text())
        self.assertEqual(solution["status"], "time_limit")
        self.assertEqual(solution["iterations"], 1)
        rows = readRows(output / "convergence.csv")
        self.assertEqual(len(rows), 2)
        self.assertEqual(rows[1][0], "0")

    def test_invalidBeta1(self) -> None:
        """
        beta1 must exceed 1.
        """
        result, _ = self.solveTriangle("--beta1", "1.0")

        self.assertEqual(result.exitCode, 1)
        error = self.errorFrom(result)
        self.assertEqual(error["error"], "ConfigurationError")
        self.assertIn("beta1", error["message"])

    def test_missingCase(self) -> None:
        """
        A case file that does not exist is a usage error.
        """
        result = self.runCommand("solve", "--case", str(self.directory / "none.m"))

        self.assertEqual(result.exitCode, 1)
        self.assertEqual(self.errorFrom(result)["error"], "UsageError")
        self.assertIn("none.m", self.errorFrom(result)["message"])

    def test_malformedCase(self) -> None:
        """
        A case file that cannot be parsed exits with 1.
        """
        case = self.directory / "broken.m"
        case.write_text("function mpc = broken\nmpc.bus = [\n")

        result = self.runCommand("solve", "--case", str(case))

        self.assertEqual(result.exitCode, 1)
        self.assertEqual(self.errorFrom(result)["error"], "MalformedCase")

    def configSeenBySolve(
        self, *arguments: str, environment: Mapping[str, str] | None = None
    ) -> RunConfig:
        seen: list[RunConfig] = []

        def solveSystem(system: PowerSystem, config: RunConfig) -> Any:
            seen.append(config)
            raise Infeasible("not solved in this test")

        case = self.caseFile(threeBusTriangle(range(3)))
        self.patch(_command, "solveSystem", solveSystem)
        result = self.runCommand(
            "solve", "--case", str(case), *arguments, environment=environment
        )

        self.assertEqual(result.exitCode, 2)
        self.assertEqual(len(seen), 1)
        return seen[0]

    def test_defaults(self) -> None:
        """
        Without configuration, the run configuration has its defaults.
        """
        self.assertEqual(self.configSeenBySolve(), RunConfig())

    def test_configLayering(self) -> None:
        """
        The configuration file overrides defaults, the environment overrides
        the configuration file for the backend, and flags override both.
        """
        self.writeConfig(
            "[Solver]\n"
            'Method = "bd"\n'
            'Backend = "gurobi"\n'
            "Beta1 = 4.0\n"
            "MIPGap = 0.01\n"
            "Contingencies = [0, 2]\n"
        )

        config = self.configSeenBySolve(
            "--gap", "0.001", environment={"SCOPF_BACKEND": "highs"}
        )

        self.assertEqual(config.method, Method.bd)
        self.assertEqual(config.backend, "highs")
        self.assertEqual(config.beta1, 4.0)
        self.assertEqual(config.mipGap, 0.001)
        self.assertEqual(config.contingencies, (0, 2))

    def test_flagsOverrideConfig(self) -> None:
        """
        Command line flags take precedence over the configuration file.
        """
        self.writeConfig('[Solver]\nMethod = "bd"\nGamma = 0.2\n')

        config = self.configSeenBySolve(
            "--method", "ef", "--gamma", "0.1", "--contingency", "1"
        )

        self.assertEqual(config.method, Method.ef)
        self.assertEqual(config.gammaDefault, 0.1)
        self.assertEqual(config.contingencies, (1,))

    def test_unknownBackend(self) -> None:
        """
        The backend named in the environment must be known.
        """
        case = self.caseFile(threeBusTriangle(range(3)))

        result = self.runCommand(
            "solve", "--case", str(case), environment={"SCOPF_BACKEND": "cplex"}
        )

        self.assertEqual(result.exitCode, 1)
        self.assertEqual(self.errorFrom(result)["error"], "UsageError")

    def test_outputDirectoryFromConfig(self) -> None:
        """
        Outputs go to the directory named in the configuration file.
        """
        output = self.directory / "configured"
        self.writeConfig(f'[Output]\nDirectory = "{output.as_posix()}"\n')
        case = self.caseFile(threeBusTriangle(range(3)))

        result = self.runCommand("solve", "--case", str(case), "--method", "ef")

        self.assertEqual(result.exitCode, 0, result.echoed(err=True))
        self.assertTrue((output / "solution.json").exists())


class ScreenTests(CommandTestCase):
    """
    Tests for the ``screen`` subcommand.
    """

    def writeDispatch(self, dispatch: DispatchState) -> Path:
        report = RunReport(method=Method.ccga, status=RunStatus.optimal)
        path, _ = writeSolution(report, dispatch, self.directory / "dispatch")
        return path

    def screen(self, system: PowerSystem, dispatch: Path, *arguments: str) -> Any:
        case = self.caseFile(system)
        return self.runCommand(
            "screen", "--case", str(case), "--dispatch", str(dispatch), *arguments
        )

    def test_solvedDispatch(self) -> None:
        """
        A solved dispatch has no violations.
        """
        system = threeBusTriangle(range(3))
        case = self.caseFile(system, "solved")
        output = self.directory / "out"
        solved = self.runCommand(
            "solve", "--case", str(case), "--method", "ef", "--output", str(output)
        )
        self.assertEqual(solved.exitCode, 0, solved.echoed(err=True))

        result = self.screen(system, output / "solution.json")

        self.assertEqual(result.exitCode, 0, result.echoed(err=True))
        self.assertIn("no violations", result.echoed())

    def test_tamperedDispatch(self) -> None:
        """
        Moving the post-contingency generation to one bus overloads two
        lines, which are listed largest first.
        """
        dispatch = self.writeDispatch(triangleDispatch([150.0, 0.0, 0.0]))
        table = self.directory / "violations.tsv"

        result = self.screen(
            threeBusTriangle(range(3), capacity=60.0),
            dispatch,
            "--output",
            str(table),
        )

        self.assertEqual(result.exitCode, 0, result.echoed(err=True))
        self.assertNotIn("no violations", result.echoed())
        self.assertIn("Violation", result.stdout.getvalue())
        self.assertIn("Contingencies with violations: 1", result.echoed())

        rows = readRows(table, delimiter="\t")
        self.assertEqual(rows[0], ["contingency", "line", "alpha_mw"])
        self.assertEqual([row[:2] for row in rows[1:]], [["1", "2"], ["1", "0"]])
        self.assertAlmostEqual(float(rows[1][2]), 20.0, places=6)
        self.assertAlmostEqual(float(rows[2][2]), 10.0, places=6)

    def test_verify(self) -> None:
        """
        Verification solves each state in the angle formulation, which agrees
        with the screening.
        """
        dispatch = self.writeDispatch(triangleDispatch([150.0, 0.0, 0.0]))

        result = self.screen(
            threeBusTriangle(range(3), capacity=60.0), dispatch, "--verify"
        )

        self.assertEqual(result.exitCode, 0, result.echoed(err=True))
        output = result.stdout.getvalue()
        self.assertIn("Angles", output)
        self.assertIn("20.000000", output)
        self.assertNotIn("NO", output)

    def test_unbalancedDispatch(self) -> None:
        """
        A post-contingency dispatch that does not meet the load exits with 1.
        """
        dispatch = self.writeDispatch(triangleDispatch([100.0, 0.0, 0.0]))

        result = self.screen(threeBusTriangle(range(3)), dispatch)

        self.assertEqual(result.exitCode, 1)
        self.assertEqual(self.errorFrom(result)["error"], "UnbalancedDispatch")

    def test_wrongCase(self) -> None:
        """
        A dispatch for a different number of generators exits with 1.
        """
        dispatch = self.writeDispatch(triangleDispatch([150.0, 0.0, 0.0]))

        result = self.screen(singleGenerator(), dispatch)

        self.assertEqual(result.exitCode, 1)
        self.assertEqual(self.errorFrom(result)["error"], "MalformedCase")


class BoundsTests(CommandTestCase):
    """
    Tests for the ``bounds`` subcommand.
    """

    trace = BoundTrace(
        events=[
            BoundEvent(wallTime=0.1, kind=BoundKind.lbFromMaster, value=2000.0),
            BoundEvent(
                wallTime=0.2,
                kind=BoundKind.ubFromP,
                value=2500.0,
                p=0.0,
                mipGap=0.005,
            ),
            BoundEvent(wallTime=0.3, kind=BoundKind.lbFromMaster, value=2390.0),
            BoundEvent(
                wallTime=0.4,
                kind=BoundKind.ubFromMaster,
                value=2400.0,
                p=100.0,
                mipGap=0.005,
            ),
        ]
    )

    def synchronousReact(
        self, main: Callable[..., Any], argv: Sequence[object] = ()
    ) -> None:
        """
        Stand-in for :func:`react` running a coroutine that does not wait.
        """
        d = ensureDeferred(main(None, *argv))
        failures: list[Failure] = []
        d.addErrback(failures.append)
        self.assertTrue(d.called)

        code: Any = 0
        if failures:
            failure = failures[0]
            code = failure.value.code if failure.check(SystemExit) else 1
        sys.exit(code)

    def bounds(self, runBounds: Callable[..., Any]) -> ClickTestResult:
        case = self.caseFile(threeBusTriangle(range(3)))
        self.patch(_command, "react", self.synchronousReact)
        self.patch(_command, "runBounds", runBounds)
        return self.runCommand(
            "bounds",
            "--case",
            str(case),
            "--schedule",
            "0",
            "--schedule",
            "50",
            "--output",
            str(self.directory / "out"),
        )

    def test_trace(self) -> None:
        """
        The bound trace is written as CSV and the final gap is printed.
        """
        configs: list[RunConfig] = []

        async def runBounds(system: PowerSystem, config: RunConfig) -> BoundTrace:
            configs.append(config)
            return self.trace

        result = self.bounds(runBounds)

        self.assertEqual(result.exitCode, 0, result.echoed(err=True))
        self.assertEqual(configs[0].pSchedule, (0.0, 50.0))

        rows = readRows(self.directory / "out" / boundsFileName)
        self.assertEqual(rows[0], ["wall_s", "kind", "value", "p"])
        self.assertEqual(
            [row[1] for row in rows[1:]],
            ["lb_from_master", "ub_from_p", "lb_from_master", "ub_from_master"],
        )

        lowerBounds = [
            float(row[2]) for row in rows[1:] if row[1] == "lb_from_master"
        ]
        self.assertEqual(lowerBounds, sorted(lowerBounds))

        echoed = result.echoed()
        self.assertIn("Final gap: 0.4167%", echoed)
        self.assertIn("Upper bound: 2400.00", echoed)

    def test_failure(self) -> None:
        """
        An error while bounding exits with 1.
        """

        async def runBounds(system: PowerSystem, config: RunConfig) -> BoundTrace:
            raise ModelError("no bounds in this test")

        result = self.bounds(runBounds)

        self.assertEqual(result.exitCode, 1)
        self.assertEqual(self.errorFrom(result)["error"], "ModelError")
        self.assertFalse((self.directory / "out" / boundsFileName).exists())


class PTDFDumpTests(CommandTestCase):
    """
    Tests for the ``ptdf-dump`` subcommand.
    """

    def test_dump(self) -> None:
        """
        The PTDF matrix is written with a row per line and a column per bus.
        """
        case = self.caseFile(threeBusTriangle())
        output = self.directory / "ptdf.csv"

        result = self.runCommand(
            "ptdf-dump", "--case", str(case), "--output", str(output)
        )

        self.assertEqual(result.exitCode, 0, result.echoed(err=True))
        rows = readRows(output)
        self.assertEqual(rows[0], ["bus_0", "bus_1", "bus_2"])
        self.assertEqual(len(rows), 4)
        self.assertEqual({row[0] for row in rows[1:]}, {"0.0"})
