"""
Extensions to :mod:`click`
"""

import sys
from collections.abc import Callable, Iterator, Mapping, Sequence
from contextlib import contextmanager
from enum import Enum, auto
from io import StringIO
from os import environ
from pathlib import Path
from tomllib import TOMLDecodeError
from tomllib import load as tomlLoadFile
from typing import Any, ClassVar, cast
from unittest.mock import patch

import click
from attrs import Factory, mutable
from click import ClickException

from .logger import currentLogLevel, setLogLevel


__all__ = (
    "ClickTestResult",
    "ConfigFileError",
    "clickTestRun",
    "configValue",
    "readConfig",
)


class Internal(Enum):
    UNSET = auto()


class ConfigFileError(ClickException):
    """
    A configuration file could not be read.
    """

    exit_code = 1


@mutable(kw_only=True)
class ClickTestResult:
    """
    Captured results after testing a click command.
    """

    echoOutputType: ClassVar = list[tuple[str, Mapping[str, Any]]]

    exitCode: int | None | Internal = Internal.UNSET

    echoOutput: echoOutputType = Factory(list)

    stdin: StringIO = Factory(StringIO)
    stdout: StringIO = Factory(StringIO)
    stderr: StringIO = Factory(StringIO)

    beginLoggingToCalls: Sequence[Any] = ()

    def echoed(self, *, err: bool = False) -> list[str]:
        """
        Text passed to :func:`click.echo` on standard output, or on standard
        error if ``err`` is true.
        """
        return [
            text
            for text, kwargs in self.echoOutput
            if bool(kwargs.get("err", False)) == err
        ]


@contextmanager
def _swapped(
    module: Any, name: str, replacement: Any
) -> Iterator[None]:
    original = getattr(module, name)
    setattr(module, name, replacement)
    try:
        yield
    finally:
        setattr(module, name, original)


def clickTestRun(
    main: Callable[[], None],
    arguments: list[str],
    *,
    environment: Mapping[str, str] | None = None,
) -> ClickTestResult:
    """
    Run a click application with captured I/O, exit code and echo output.

    ``arguments`` is the full ``argv``, program name included.
    Environment variables in ``environment`` are set for the duration of the
    run.
    The global log level is restored afterwards.
    """
    assert len(arguments) > 0

    result = ClickTestResult()

    def captureExit(code: int | None = None) -> None:
        result.exitCode = code

    def captureEcho(message: Any = None, **kwargs: Any) -> None:
        result.echoOutput.append(("" if message is None else str(message), kwargs))

    logLevel = currentLogLevel()

    with (
        _swapped(sys, "stdin", result.stdin),
        _swapped(sys, "stdout", result.stdout),
        _swapped(sys, "stderr", result.stderr),
        _swapped(sys, "argv", arguments),
        _swapped(sys, "exit", cast(Callable, captureExit)),
        _swapped(click, "echo", cast(Callable, captureEcho)),
        patch.dict(environ, dict(environment or {})),
        patch("twisted.logger.globalLogBeginner.beginLoggingTo") as beginLoggingTo,
    ):
        try:
            main()
        finally:
            setLogLevel(logLevel)

    result.beginLoggingToCalls = beginLoggingTo.call_args_list

    return result


def readConfig(path: Path) -> dict[str, Any]:
    """
    Read TOML configuration from the given path.
    A missing file is an empty configuration.
    """
    path = path.expanduser()

    try:
        with path.open("rb") as f:
            return tomlLoadFile(f)
    except FileNotFoundError:
        return {}
    except TOMLDecodeError as e:
        raise ConfigFileError(f"Invalid configuration file {path}: {e}") from e


def configValue(
    config: Mapping[str, Any], section: str, key: str, default: Any = None
) -> Any:
    """
    Look up ``key`` in ``section`` of a configuration read by
    :func:`readConfig`.
    """
    values = config.get(section, {})
    if not isinstance(values, Mapping):
        raise ConfigFileError(f"Configuration section {section} is not a table")
    return values.get(key, default)
