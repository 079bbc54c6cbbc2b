"""
Extensions to :mod:`twisted.logger`
"""

import sys
from collections.abc import Iterator
from contextlib import contextmanager
from typing import Any, TextIO, cast

from twisted.logger import (
    FilteringLogObserver,
    ILogFilterPredicate,
    ILogObserver,
    LogLevel,
    LogLevelFilterPredicate,
    globalLogBeginner,
    globalLogPublisher,
    jsonFileLogObserver,
    textFileLogObserver,
)


__all__ = (
    "currentLogLevel",
    "globalLogLevelPredicate",
    "logCapture",
    "setLogLevel",
    "startLogging",
)


globalLogLevelPredicate = LogLevelFilterPredicate(defaultLogLevel=LogLevel.info)


def currentLogLevel() -> LogLevel:
    """
    The log level applied to namespaces without their own setting.
    """
    return cast(LogLevel, globalLogLevelPredicate.logLevelForNamespace(""))


def setLogLevel(level: LogLevel | str) -> None:
    """
    Set the default log level.
    Strings are level names, as accepted by :meth:`LogLevel.levelWithName`.
    """
    if isinstance(level, str):
        level = LogLevel.levelWithName(level.lower())
    globalLogLevelPredicate.setLogLevelForNamespace("", level)


def startLogging(file: TextIO = sys.stderr, *, json: bool = False) -> None:
    """
    Start Twisted logging system, writing text (or JSON records, one per line)
    to the given file.
    """
    if json:
        fileObserver = jsonFileLogObserver(file)
    else:
        fileObserver = textFileLogObserver(file)

    filteringObserver = FilteringLogObserver(
        cast(ILogObserver, fileObserver),
        (cast(ILogFilterPredicate, globalLogLevelPredicate),),
    )

    globalLogBeginner.beginLoggingTo(
        [cast(ILogObserver, filteringObserver)],
        redirectStandardIO=False,
    )


@contextmanager
def logCapture() -> Iterator[list[dict[str, Any]]]:
    """
    Collect events published while the context is active.
    """
    events: list[dict[str, Any]] = []
    observer = cast(ILogObserver, events.append)

    globalLogPublisher.addObserver(observer)
    try:
        yield events
    finally:
        globalLogPublisher.removeObserver(observer)
