"""Error taxonomy for the embedded script evaluator.

Parse-time problems raise ESSyntaxError; anything a script does at run time
surfaces as ESRuntimeError (carrying the JS error kind), and the sandbox
guards raise the dedicated budget/resource/stack errors so callers can tell
hostile termination apart from ordinary script bugs.
"""

from __future__ import annotations


class ESError(Exception):
    """Base class for all evaluator errors."""


class ESSyntaxError(ESError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(f"{message} (line {line}, col {col})" if line else message)
        self.line = line
        self.col = col


class ESRuntimeError(ESError):
    """A JS-level exception: TypeError, ReferenceError, RangeError, or a
    value thrown by the script itself."""

    def __init__(self, kind: str, message: str, value: object | None = None):
        super().__init__(f"{kind}: {message}")
        self.kind = kind
        self.js_message = message
        self.value = value


class BudgetExceededError(ESError):
    """The per-run instruction budget was exhausted."""

    def __init__(self, budget: int):
        super().__init__(f"instruction budget of {budget} exhausted")
        self.budget = budget


class ResourceLimitError(ESError):
    """An allocation exceeded the sandbox's size caps."""


class StackDepthError(ESError):
    """Script recursion exceeded the sandbox call-depth cap."""
