"""Write-once slots shared by the workers of one parallel step."""

import logging
import threading
from typing import Dict, Iterable, Mapping

from pairnet.fieldtower.element import FieldElement
from pairnet.parallel.schedule import ScheduleError

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


class SharedBoard:
    """
    Read-only block values plus one write-once slot per step operation.

    Readers of an unpublished slot block until it is published, the board
    is aborted, or the timeout expires.
    """

    def __init__(self, block_values: Mapping[str, FieldElement], slots: Iterable[str], timeout: float = 30.0):
        self._inputs: Dict[str, FieldElement] = dict(block_values)
        self._values: Dict[str, FieldElement] = {}
        self._events: Dict[str, threading.Event] = {name: threading.Event() for name in slots}
        self._lock = threading.Lock()
        self._aborted = threading.Event()
        self.timeout = timeout

    def publish(self, name: str, value: FieldElement) -> None:
        """
        Raises:
            ScheduleError: If the slot is unknown or already written
        """
        with self._lock:
            if name not in self._events:
                raise ScheduleError(f"No slot named {name} on the board")
            if name in self._values:
                raise ScheduleError(f"Slot {name} written twice")
            self._values[name] = value
        self._events[name].set()

    def read(self, name: str) -> FieldElement:
        """
        Raises:
            ScheduleError: If the slot is unknown, never published in time,
                or the step was aborted
        """
        if name in self._inputs:
            return self._inputs[name]
        event = self._events.get(name)
        if event is None:
            raise ScheduleError(f"No slot named {name} on the board")
        if not event.wait(self.timeout):
            raise ScheduleError(f"Timed out after {self.timeout}s waiting for {name}")
        if name not in self._values:
            raise ScheduleError(f"Step aborted before {name} was published")
        return self._values[name]

    def abort(self) -> None:
        """Wake every waiting reader."""
        self._aborted.set()
        for event in self._events.values():
            event.set()

    @property
    def aborted(self) -> bool:
        return self._aborted.is_set()

    def published(self) -> Dict[str, FieldElement]:
        with self._lock:
            return dict(self._values)
