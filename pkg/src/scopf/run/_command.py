# -*- test-case-name: scopf.run.test.test_command -*-

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
Command line tool.
"""

import sys
from collections.abc import Callable, Mapping
from math import isfinite
from pathlib import Path
from typing import Any, TypeVar, cast

import click
from attrs import frozen
from click import (
    Abort,
    Choice,
    ClickException,
    Context,
    Group,
    UsageError,
    group,
    option,
    pass_context,
    version_option,
)
from click import (
    Path as ClickPath,
)
from rich.box import DOUBLE_EDGE as RICH_DOUBLE_EDGE
from rich.console import Console as RichConsole
from rich.table import Table as RichTable
from twisted.internet.interfaces import IReactorCore
from twisted.internet.task import react
from twisted.logger import Logger

from scopf.backend import BackendError, backendNames
from scopf.bounds import runBounds
from scopf.caseio import (
    CaseError,
    MalformedCase,
    parseCase,
    readDispatch,
    writeBoundTrace,
    writePTDF,
    writeSolution,
    writeViolationTable,
)
from scopf.ext.click import configValue, readConfig
from scopf.ext.logger import setLogLevel, startLogging
from scopf.methods import Infeasible, MethodError, ResponseInfeasible, TimeLimit
from scopf.methods import solve as solveSystem
from scopf.model import (
    BigMMode,
    BoundTrace,
    ConfigurationError,
    DispatchState,
    Method,
    ModelError,
    RunConfig,
    RunReport,
    ViolationTable,
)
from scopf.model.json import jsonTextFromObject
from scopf.network import angleFlowViolation
from scopf.ptdf import PTDFError, buildCutStructures, computePTDF
from scopf.ptdf import screen as screenDispatch


__all__ = ()


log = Logger()

F = TypeVar("F", bound=Callable[..., Any])


@frozen(kw_only=True)
class Command:
    """
    Security-Constrained Optimal Power Flow Command Line Tool
    """

    @classmethod
    def main(cls) -> None:
        """
        Command line entry point.
        """
        try:
            exitCode = main.main(auto_envvar_prefix="SCOPF", standalone_mode=False)
        except reportedErrors as e:
            exitCode = reportError(e)
        except Abort:
            click.echo("Aborted.", err=True)
            exitCode = 1

        if exitCode is not None:
            sys.exit(exitCode)


reportedErrors = (
    BackendError,
    CaseError,
    ClickException,
    MethodError,
    ModelError,
    PTDFError,
)


def exitCodeForError(error: Exception) -> int:
    """
    0 is a feasible solve, 2 means no feasible dispatch was found, 3 means the
    time limit was reached; everything else exits with 1.
    """
    if isinstance(error, Infeasible | ResponseInfeasible):
        return 2
    if isinstance(error, TimeLimit):
        return 3
    return 1


def errorName(error: Exception) -> str:
    """
    Name reported for an error.
    Every command line usage error is reported as ``UsageError``.
    """
    if isinstance(error, UsageError):
        return UsageError.__name__
    return error.__class__.__name__


def reportError(error: Exception) -> int:
    """
    Print a one-line JSON description of an error to standard error and
    return the matching exit code.
    """
    name = errorName(error)
    message = getattr(error, "message", None) or str(error)
    log.debug("Exiting on {error}: {message}", error=name, message=message)
    click.echo(jsonTextFromObject({"error": name, "message": message}), err=True)
    return exitCodeForError(error)


def groupClassWithConfigParam(param: str) -> type[Group]:
    class GroupWithConfiguration(Group):
        def invoke(self, ctx: Context) -> object:
            if param in ctx.params:
                fileName = ctx.params[param]
                if fileName is not None:
                    if ctx.default_map is None:
                        ctx.default_map = {}
                    if "_config" not in ctx.default_map:
                        config = readConfig(Path(fileName))
                        ctx.default_map["_config"] = config
                        # Set _config on subcommand contexts
                        for command in self.commands:
                            if command not in ctx.default_map:
                                ctx.default_map[command] = {}
                            if "_config" not in ctx.default_map[command]:
                                ctx.default_map[command]["_config"] = config

            return super().invoke(ctx)

    return GroupWithConfiguration


defaultConfigPath = Path("~/.scopf.toml")
defaultOutputDirectory = Path("./out")
boundsFileName = "bounds.csv"

# RunConfig attribute -> (TOML section, key)
configKeys: Mapping[str, tuple[str, str]] = {
    "method": ("Solver", "Method"),
    "backend": ("Solver", "Backend"),
    "gammaDefault": ("Solver", "Gamma"),
    "beta1": ("Solver", "Beta1"),
    "beta2": ("Solver", "Beta2"),
    "epsViolation": ("Solver", "Epsilon"),
    "epsBinary": ("Solver", "BinaryEpsilon"),
    "mipGap": ("Solver", "MIPGap"),
    "timeLimit": ("Solver", "TimeLimit"),
    "bigMMode": ("Solver", "BigM"),
    "threads": ("Solver", "Threads"),
    "seed": ("Solver", "Seed"),
    "maxIterations": ("Solver", "MaxIterations"),
    "contingencies": ("Solver", "Contingencies"),
    "pSchedule": ("Bounds", "Schedule"),
}


def configurationFromContext(ctx: Context) -> dict[str, Any]:
    """
    Get the configuration from the given context.
    """
    assert ctx.default_map is not None
    assert "_config" in ctx.default_map
    return cast(dict[str, Any], ctx.default_map["_config"])


def runConfigFromContext(ctx: Context, settings: Mapping[str, Any]) -> RunConfig:
    """
    Build the run configuration from the configuration file, overridden by
    the given command line settings.
    Unset settings are ``None`` or empty.
    """
    configuration = configurationFromContext(ctx)

    values: dict[str, Any] = {}
    for name, (section, key) in configKeys.items():
        value = configValue(configuration, section, key)
        if value is not None:
            values[name] = value
    for name, value in settings.items():
        if value is not None and value != ():
            values[name] = value

    try:
        config = RunConfig(**values)
    except ConfigurationError:
        raise
    except (TypeError, ValueError) as e:
        raise UsageError(f"Invalid solver configuration: {e}") from e

    log.debug("Run configuration: {config}", config=config)
    return config


def outputDirectoryFromContext(ctx: Context, directory: Path | None) -> Path:
    if directory is not None:
        return directory
    configured = configValue(configurationFromContext(ctx), "Output", "Directory")
    if configured is None:
        return defaultOutputDirectory
    return Path(configured).expanduser()


def formatNumber(value: float | None) -> str:
    if value is None:
        return "…"
    if not isfinite(value):
        return str(value)
    return f"{value:.2f}"


def formatGap(gap: float) -> str:
    if not isfinite(gap):
        return "unknown"
    return f"{gap:.4%}"


def printSummary(report: RunReport, dispatch: DispatchState | None = None) -> None:
    console = RichConsole()

    table = RichTable(show_header=True, box=RICH_DOUBLE_EDGE)
    table.add_column("Quantity")
    table.add_column("Value")

    table.add_row("Method", report.method.value)
    table.add_row("Status", report.status.value)
    if dispatch is not None:
        table.add_row("Objective", formatNumber(dispatch.objective))
    table.add_row("Iterations", str(len(report.iterations)))
    table.add_row("Disjunction states", str(len(report.disjunctionStates)))
    if dispatch is not None:
        table.add_row("Max violation (MW)", formatNumber(dispatch.maxViolation))
        table.add_row("Feasible", "yes" if dispatch.feasible else "no")
    table.add_row("Wall time (s)", formatNumber(report.wallTime))

    console.print(table)


def printViolations(violations: ViolationTable) -> None:
    if not violations:
        click.echo("no violations")
        return

    console = RichConsole()

    table = RichTable(show_header=True, box=RICH_DOUBLE_EDGE)
    table.add_column("Contingency")
    table.add_column("Line")
    table.add_column("Violation (MW)")

    for violation in violations:
        table.add_row(
            str(violation.contingency),
            str(violation.line),
            f"{violation.alpha:.6f}",
        )

    console.print(table)
    click.echo(f"Contingencies with violations: {len(violations.states)}")


def printVerification(
    verification: list[tuple[int, float, float]], tolerance: float
) -> None:
    console = RichConsole()

    table = RichTable(show_header=True, box=RICH_DOUBLE_EDGE)
    table.add_column("Contingency")
    table.add_column("PTDF (MW)")
    table.add_column("Angles (MW)")
    table.add_column("Agree")

    for contingency, screened, solved in verification:
        agree = (screened > tolerance) == (solved > tolerance)
        table.add_row(
            str(contingency),
            f"{screened:.6f}",
            f"{solved:.6f}",
            "yes" if agree else "NO",
        )

    console.print(table)


def printBoundTrace(trace: BoundTrace) -> None:
    console = RichConsole()

    table = RichTable(show_header=True, box=RICH_DOUBLE_EDGE)
    table.add_column("Time (s)")
    table.add_column("Kind")
    table.add_column("Value")
    table.add_column("p (%)")
    table.add_column("Lower")
    table.add_column("Upper")

    for event, (_, lb, ub) in zip(trace, trace.runningBounds(), strict=True):
        table.add_row(
            f"{event.wallTime:.3f}",
            event.kind.value,
            formatNumber(event.value),
            "" if event.p is None else f"{event.p:g}",
            formatNumber(lb),
            formatNumber(ub),
        )

    console.print(table)


defaults = RunConfig()

caseOptions = (
    option(
        "--case",
        help="MATPOWER case file.",
        type=ClickPath(exists=True, dir_okay=False, path_type=Path),
        metavar="<path>",
        required=True,
    ),
    option(
        "--sidecar",
        help=(
            "JSON file with generator capacity and gamma overrides. "
            "(default: the case path with a .json suffix, if present)"
        ),
        type=ClickPath(exists=True, dir_okay=False, path_type=Path),
        metavar="<path>",
        default=None,
    ),
)

solverOptions = (
    option(
        "--gamma",
        "gammaDefault",
        help=f"Default response gamma. (default: {defaults.gammaDefault})",
        type=float,
        default=None,
    ),
    option(
        "--beta1",
        "beta1",
        help=(
            "Cut threshold divisor for states with imported disjunctions. "
            f"(default: {defaults.beta1})"
        ),
        type=float,
        default=None,
    ),
    option(
        "--beta2",
        "beta2",
        help=(
            "Cut threshold divisor for the other states. "
            f"(default: {defaults.beta2})"
        ),
        type=float,
        default=None,
    ),
    option(
        "--eps",
        "epsViolation",
        help=f"Line violation tolerance in MW. (default: {defaults.epsViolation})",
        type=float,
        default=None,
    ),
    option(
        "--eps-binary",
        "epsBinary",
        help=(
            "Imbalance tolerance of the response search in MW. "
            f"(default: {defaults.epsBinary})"
        ),
        type=float,
        default=None,
    ),
    option(
        "--gap",
        "mipGap",
        help=f"Relative MIP gap. (default: {defaults.mipGap})",
        type=float,
        default=None,
    ),
    option(
        "--time-limit",
        "timeLimit",
        help="Wall time limit in seconds. (default: none)",
        type=float,
        default=None,
    ),
    option(
        "--big-m",
        "bigMMode",
        help=f"Big-M constants. (default: {defaults.bigMMode.value})",
        type=Choice([mode.value for mode in BigMMode]),
        default=None,
    ),
    option(
        "--backend",
        "backend",
        help=f"Solver backend. (default: {defaults.backend})",
        type=Choice(backendNames),
        envvar="SCOPF_BACKEND",
        default=None,
    ),
    option(
        "--threads",
        "threads",
        help=f"Solver threads. (default: {defaults.threads})",
        type=int,
        default=None,
    ),
    option(
        "--seed",
        "seed",
        help=f"Solver random seed. (default: {defaults.seed})",
        type=int,
        default=None,
    ),
    option(
        "--max-iterations",
        "maxIterations",
        help=(
            "Iteration limit of decomposition methods. "
            f"(default: {defaults.maxIterations})"
        ),
        type=int,
        default=None,
    ),
    option(
        "--contingency",
        "contingencies",
        help="Generator whose outage is considered; repeat for several. "
        "(default: every generator with an upper limit)",
        type=int,
        multiple=True,
    ),
)


def withOptions(*options: Callable[[F], F]) -> Callable[[F], F]:
    def decorate(f: F) -> F:
        for decorator in reversed(options):
            f = decorator(f)
        return f

    return decorate


@group(cls=groupClassWithConfigParam("config"))
@version_option(package_name="scopf-primary-response")
@option(
    "--config",
    help=f"Set path to configuration file. (default: {defaultConfigPath})",
    type=str,
    metavar="<path>",
    prompt=False,
    required=False,
    default=defaultConfigPath,
)
@option(
    "--log-level",
    "logLevel",
    help="Set the minimum level of logged events. (default: info)",
    type=Choice(["debug", "info", "warn", "error", "critical"]),
    default="info",
)
@option(
    "--log-format",
    "logFormat",
    help="Write log events as text or as JSON records. (default: text)",
    type=Choice(["text", "json"]),
    default="text",
)
@pass_context
def main(
    ctx: Context, config: str, logLevel: str, logFormat: str  # noqa: ARG001
) -> None:
    """
    Security-constrained optimal power flow with primary response.
    """
    setLogLevel(logLevel)
    startLogging(sys.stderr, json=(logFormat == "json"))


@main.command()
@withOptions(*caseOptions)
@option(
    "--method",
    "method",
    help=f"Solution method. (default: {defaults.method.value})",
    type=Choice([method.value for method in Method]),
    default=None,
)
@withOptions(*solverOptions)
@option(
    "--output",
    help=f"Output directory. (default: {defaultOutputDirectory})",
    type=ClickPath(file_okay=False, path_type=Path),
    metavar="<path>",
    default=None,
)
@pass_context
def solve(
    ctx: Context,
    case: Path,
    sidecar: Path | None,
    output: Path | None,
    **settings: Any,
) -> int:
    """
    Solve a case and write the solution and convergence history.
    """
    config = runConfigFromContext(ctx, settings)
    system = parseCase(case, config, sidecar=sidecar)
    directory = outputDirectoryFromContext(ctx, output)

    try:
        dispatch, report = solveSystem(system, config)
    except MethodError as e:
        if e.report is not None:
            writeSolution(e.report, None, directory)
            printSummary(e.report)
        raise

    writeSolution(report, dispatch, directory)
    printSummary(report, dispatch)

    return 0 if dispatch.feasible else 2


@main.command()
@withOptions(*caseOptions)
@withOptions(*solverOptions)
@option(
    "--schedule",
    "pSchedule",
    help=(
        "Percentage of generators keeping their capped response in a "
        "restricted problem; repeat for several. "
        f"(default: {', '.join(f'{p:g}' for p in defaults.pSchedule)})"
    ),
    type=float,
    multiple=True,
)
@option(
    "--output",
    help=f"Output directory. (default: {defaultOutputDirectory})",
    type=ClickPath(file_okay=False, path_type=Path),
    metavar="<path>",
    default=None,
)
@pass_context
def bounds(
    ctx: Context,
    case: Path,
    sidecar: Path | None,
    output: Path | None,
    **settings: Any,
) -> None:
    """
    Track upper bounds from restricted problems against the lower bounds of
    the unrestricted problem, and write them as CSV.
    """
    config = runConfigFromContext(ctx, settings)
    system = parseCase(case, config, sidecar=sidecar)
    directory = outputDirectoryFromContext(ctx, output)

    async def runInReactor(reactor: IReactorCore) -> None:  # noqa: ARG001
        try:
            trace = await runBounds(system, config)
            directory.mkdir(parents=True, exist_ok=True)
            writeBoundTrace(trace, directory / boundsFileName)
        except reportedErrors as e:
            raise SystemExit(reportError(e)) from e

        printBoundTrace(trace)
        click.echo(f"Lower bound: {formatNumber(trace.lowerBound)}")
        click.echo(f"Upper bound: {formatNumber(trace.upperBound)}")
        click.echo(f"Final gap: {formatGap(trace.finalGap)}")

    react(runInReactor)


@main.command()
@withOptions(*caseOptions)
@option(
    "--dispatch",
    help="Solution JSON file written by the solve command.",
    type=ClickPath(exists=True, dir_okay=False, path_type=Path),
    metavar="<path>",
    required=True,
)
@option(
    "--verify/--no-verify",
    default=False,
    help="Also solve each state's power flow in the angle formulation.",
)
@option(
    "--eps",
    "epsViolation",
    help=f"Line violation tolerance in MW. (default: {defaults.epsViolation})",
    type=float,
    default=None,
)
@option(
    "--backend",
    "backend",
    help=f"Solver backend for verification. (default: {defaults.backend})",
    type=Choice(backendNames),
    envvar="SCOPF_BACKEND",
    default=None,
)
@option(
    "--output",
    help="Also write the violations as tab-separated values to this file.",
    type=ClickPath(dir_okay=False, path_type=Path),
    metavar="<path>",
    default=None,
)
@pass_context
def screen(
    ctx: Context,
    case: Path,
    sidecar: Path | None,
    dispatch: Path,
    verify: bool,
    output: Path | None,
    **settings: Any,
) -> int:
    """
    List the line violations of each post-contingency state of a dispatch.
    """
    config = runConfigFromContext(ctx, settings)
    system = parseCase(case, config, sidecar=sidecar)
    state = readDispatch(dispatch)

    if state.generation.shape != (system.generatorCount,):
        raise MalformedCase(
            f"Dispatch {dispatch} has {state.generation.size} generators, "
            f"case {case} has {system.generatorCount}"
        )

    bundle = buildCutStructures(system)
    postContingency = state.contingencyGeneration()
    violations = screenDispatch(
        bundle, postContingency, balanceTolerance=config.epsViolation
    )

    printViolations(violations)
    if output is not None:
        writeViolationTable(violations, output)

    if verify:
        verification = []
        for contingency, generation in sorted(postContingency.items()):
            _, solved = angleFlowViolation(
                system, generation, backend=config.backend
            )
            screened = max(
                (v.alpha for v in violations.forState(contingency)), default=0.0
            )
            verification.append((contingency, screened, solved))
        printVerification(verification, config.epsViolation)

    return 0


@main.command("ptdf-dump")
@withOptions(*caseOptions)
@option(
    "--output",
    help="CSV file to write.",
    type=ClickPath(dir_okay=False, path_type=Path),
    metavar="<path>",
    required=True,
)
@pass_context
def ptdfDump(
    ctx: Context, case: Path, sidecar: Path | None, output: Path
) -> int:
    """
    Write the power transfer distribution factors of a case as CSV.
    """
    config = runConfigFromContext(ctx, {})
    system = parseCase(case, config, sidecar=sidecar)

    ptdf = computePTDF(system)
    writePTDF(ptdf, output)
    click.echo(f"Wrote {ptdf.shape[0]}x{ptdf.shape[1]} PTDF matrix to {output}")

    return 0
