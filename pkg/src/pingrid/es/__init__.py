from .errors import (
    BudgetExceededError,
    ESError,
    ESRuntimeError,
    ESSyntaxError,
    ResourceLimitError,
    StackDepthError,
)
from .interp import ESThrowSignal, Interp, to_display
from .parser import parse
from .values import (
    UNDEF,
    HostFunction,
    HostObject,
    JSArray,
    JSFunction,
    JSObject,
    to_boolean,
    to_number,
    to_string,
)

__all__ = [
    "UNDEF",
    "BudgetExceededError",
    "ESError",
    "ESRuntimeError",
    "ESSyntaxError",
    "ESThrowSignal",
    "HostFunction",
    "HostObject",
    "Interp",
    "JSArray",
    "JSFunction",
    "JSObject",
    "ResourceLimitError",
    "StackDepthError",
    "parse",
    "to_boolean",
    "to_display",
    "to_number",
    "to_string",
]
