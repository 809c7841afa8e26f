"""Shared exception hierarchy.

Every subsystem raises subclasses of PingridError so service handlers can
map failures onto HTTP status codes and the error console uniformly.
"""

from __future__ import annotations


class PingridError(Exception):
    """Base class for all library errors."""


class ValidationError(PingridError):
    """Input violates a precondition or type invariant."""


class NotFoundError(PingridError):
    """A named entity (card, parameter, button group, session) does not exist."""


class InvalidStateError(PingridError):
    """Operation requires state the caller has not established."""
