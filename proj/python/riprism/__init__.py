"""Restart-incremental analysis of state and parse dynamics over prefixes."""

from ._core import *  # noqa: F401,F403
from ._core import (
    Error,
    FormatError,
    InvalidArgument,
    BackendError,
    LN2,
    DEFAULT_SHIFT_THRESHOLD,
)

__version__ = "0.1.0"


def read_dump_file(path):
    """Reads a states or parse-timeline dump from disk.

    Returns (header, payload) where payload is a StatePrism or ParseTimeline
    depending on header["kind"].
    """
    with open(path, "rb") as f:
        data = f.read()
    try:
        return read_state_dump(data)  # noqa: F405
    except FormatError:
        return read_timeline_dump(data)  # noqa: F405
