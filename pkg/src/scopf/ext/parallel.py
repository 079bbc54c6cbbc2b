"""
Extensions to Twisted for running blocking workloads side by side.

An example::

    from twisted.logger import Logger

    log = Logger()

    async def solveBoth():
        recorder = EventRecorder()

        def solveOne():
            recorder.append("one")
            return 1

        def solveTwo():
            recorder.append("two")
            return 2

        # Both calls run on the reactor's thread pool; results come back in
        # call order once both have finished.
        one, two = await runInThreads(solveOne, solveTwo)
"""

from collections.abc import Callable, Sequence
from threading import Lock
from time import monotonic
from typing import Any, Generic, TypeVar

from attrs import Factory, field, frozen, mutable
from twisted.internet.defer import DeferredList
from twisted.internet.threads import deferToThread
from twisted.logger import Logger
from twisted.python.failure import Failure


__all__ = (
    "Clock",
    "EventRecorder",
    "runInThreads",
)


log = Logger()

T = TypeVar("T")


@frozen(kw_only=True)
class Clock:
    """
    Monotonic wall clock measuring seconds since its creation.
    """

    start: float = Factory(monotonic)

    def elapsed(self) -> float:
        """
        Seconds since this clock was created.
        """
        return monotonic() - self.start


@mutable(kw_only=True)
class EventRecorder(Generic[T]):
    """
    List of events that may be appended to from several threads.
    """

    _events: list[T] = Factory(list)
    _lock: Lock = field(factory=Lock, eq=False)

    def append(self, event: T) -> None:
        with self._lock:
            self._events.append(event)

    def snapshot(self) -> list[T]:
        """
        Copy of the events recorded so far, in append order.
        """
        with self._lock:
            return list(self._events)


async def runInThreads(*calls: Callable[[], Any]) -> Sequence[Any]:
    """
    Run blocking calls concurrently in the reactor's thread pool and wait for
    all of them.

    Results are returned in call order.
    If any call raised, the first such exception (in call order) is raised
    after every call has finished.
    """
    outcomes = await DeferredList(
        [deferToThread(call) for call in calls], consumeErrors=True
    )

    results: list[Any] = []
    failures: list[Failure] = []
    for success, value in outcomes:
        if success:
            results.append(value)
        else:
            log.failure("Threaded call failed", failure=value)
            failures.append(value)
            results.append(None)

    if failures:
        failures[0].raiseException()

    return results
