"""Runtime value model and coercion rules for the script dialect.

Numbers are Python floats throughout (JS has only doubles); undefined is the
UNDEF singleton and null maps to Python None. Containers are thin wrappers so
the evaluator can intercept growth and enforce the sandbox allocation caps.
"""

from __future__ import annotations

import math
from typing import Callable

from .errors import ESRuntimeError, ResourceLimitError


class JSUndefined:
    _instance: "JSUndefined | None" = None

    def __new__(cls) -> "JSUndefined":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "undefined"

    def __bool__(self) -> bool:
        return False


UNDEF = JSUndefined()


class JSObject:
    __slots__ = ("props",)

    def __init__(self, props: dict[str, object] | None = None):
        self.props: dict[str, object] = props if props is not None else {}

    def __repr__(self) -> str:
        return f"JSObject({self.props!r})"


class JSArray:
    __slots__ = ("elements",)

    def __init__(self, elements: list[object] | None = None):
        self.elements: list[object] = elements if elements is not None else []

    def __repr__(self) -> str:
        return f"JSArray({self.elements!r})"


class JSFunction:
    """A compiled script function: parameter binder + body runner + closure."""

    __slots__ = ("name", "bind_params", "run_body", "env", "is_arrow", "length")

    def __init__(self, name, bind_params, run_body, env, is_arrow, length):
        self.name = name or ""
        self.bind_params = bind_params
        self.run_body = run_body
        self.env = env
        self.is_arrow = is_arrow
        self.length = length

    def __repr__(self) -> str:
        return f"<function {self.name or '(anonymous)'}>"


class HostFunction:
    """A Python callable exposed to scripts: fn(interp, this, args) -> value."""

    __slots__ = ("name", "fn")

    def __init__(self, name: str, fn: Callable):
        self.name = name
        self.fn = fn

    def __repr__(self) -> str:
        return f"<host function {self.name}>"


class BoundMethod:
    __slots__ = ("this", "func")

    def __init__(self, this: object, func: object):
        self.this = this
        self.func = func


class HostObject:
    """Base for host-provided objects (grid, pins). Subclasses override the
    property hooks; everything else is invisible to scripts."""

    host_name = "HostObject"

    def get_prop(self, name: str):
        return UNDEF

    def set_prop(self, name: str, value: object) -> None:
        raise ESRuntimeError("TypeError", f"cannot assign to property '{name}' of {self.host_name}")

    def keys(self) -> list[str]:
        return []


NO_THIS = object()  # scope marker: function provides no own `this`


class Scope:
    __slots__ = ("vars", "parent", "this_val")

    def __init__(self, parent: "Scope | None" = None, this_val: object = NO_THIS):
        self.vars: dict[str, object] = {}
        self.parent = parent
        self.this_val = this_val

    def lookup(self, name: str):
        scope: Scope | None = self
        while scope is not None:
            if name in scope.vars:
                return scope.vars[name]
            scope = scope.parent
        raise ESRuntimeError("ReferenceError", f"{name} is not defined")

    def assign(self, name: str, value: object) -> None:
        scope: Scope | None = self
        while scope is not None:
            if name in scope.vars:
                scope.vars[name] = value
                return
            if scope.parent is None:
                # sloppy-mode implicit global, confined to this realm
                scope.vars[name] = value
                return
            scope = scope.parent

    def declare(self, name: str, value: object) -> None:
        self.vars[name] = value

    def get_this(self):
        scope: Scope | None = self
        while scope is not None:
            if scope.this_val is not NO_THIS:
                return scope.this_val
            scope = scope.parent
        return UNDEF


# ---- coercions ----


def to_boolean(v: object) -> bool:
    t = type(v)
    if t is float:
        return v == v and v != 0.0  # NaN and 0 are falsy
    if t is bool:
        return v  # type: ignore[return-value]
    if v is UNDEF or v is None:
        return False
    if t is str:
        return len(v) > 0  # type: ignore[arg-type]
    return True


def to_number(v: object) -> float:
    t = type(v)
    if t is float:
        return v  # type: ignore[return-value]
    if t is bool:
        return 1.0 if v else 0.0
    if t is int:
        return float(v)  # type: ignore[arg-type]
    if v is UNDEF:
        return math.nan
    if v is None:
        return 0.0
    if isinstance(v, str):
        text = v.strip()
        if not text:
            return 0.0
        try:
            if text.lower().startswith(("0x", "-0x", "+0x")):
                return float(int(text, 16))
            if text in ("Infinity", "+Infinity"):
                return math.inf
            if text == "-Infinity":
                return -math.inf
            return float(text)
        except ValueError:
            return math.nan
    if isinstance(v, JSArray):
        if not v.elements:
            return 0.0
        if len(v.elements) == 1:
            return to_number(v.elements[0])
        return math.nan
    return math.nan


def number_to_string(n: float) -> str:
    if n != n:
        return "NaN"
    if n == math.inf:
        return "Infinity"
    if n == -math.inf:
        return "-Infinity"
    if n == 0.0:
        return "0"
    if n == int(n) and abs(n) < 1e21:
        return str(int(n))
    return repr(n)


def to_string(v: object, _depth: int = 0) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return number_to_string(v)
    if v is UNDEF:
        return "undefined"
    if v is None:
        return "null"
    if isinstance(v, JSArray):
        if _depth > 4:
            return "..."
        parts = []
        for item in v.elements:
            parts.append("" if item is UNDEF or item is None else to_string(item, _depth + 1))
        joined = ",".join(parts)
        if len(joined) > 1_000_000:
            raise ResourceLimitError("string conversion exceeds size cap")
        return joined
    if isinstance(v, JSObject):
        return "[object Object]"
    if isinstance(v, (JSFunction, HostFunction, BoundMethod)):
        return "function () { [native code] }"
    if isinstance(v, HostObject):
        return f"[object {v.host_name}]"
    return str(v)


def to_int32(v: object) -> int:
    n = to_number(v)
    if n != n or n in (math.inf, -math.inf):
        return 0
    n = int(n)
    n &= 0xFFFFFFFF
    if n >= 0x80000000:
        n -= 0x100000000
    return n


def to_uint32(v: object) -> int:
    n = to_number(v)
    if n != n or n in (math.inf, -math.inf):
        return 0
    return int(n) & 0xFFFFFFFF


def type_of(v: object) -> str:
    if v is UNDEF:
        return "undefined"
    if v is None:
        return "object"
    if isinstance(v, bool):
        return "boolean"
    if isinstance(v, float):
        return "number"
    if isinstance(v, str):
        return "string"
    if isinstance(v, (JSFunction, HostFunction, BoundMethod)):
        return "function"
    return "object"


def strict_equals(a: object, b: object) -> bool:
    ta, tb = type(a), type(b)
    if ta is float and tb is float:
        return a == b  # NaN != NaN falls out naturally
    if a is UNDEF or b is UNDEF:
        return a is b
    if a is None or b is None:
        return a is b
    if ta is bool or tb is bool:
        return ta is bool and tb is bool and a == b
    if ta is str and tb is str:
        return a == b
    return a is b


def loose_equals(a: object, b: object) -> bool:
    if (a is UNDEF or a is None) and (b is UNDEF or b is None):
        return True
    if a is UNDEF or a is None or b is UNDEF or b is None:
        return False
    a_num = isinstance(a, (bool, float))
    b_num = isinstance(b, (bool, float))
    if a_num and b_num:
        return to_number(a) == to_number(b)
    if isinstance(a, str) and isinstance(b, str):
        return a == b
    if a_num and isinstance(b, str):
        return to_number(a) == to_number(b)
    if isinstance(a, str) and b_num:
        return to_number(a) == to_number(b)
    # object vs primitive: approximate ToPrimitive via string/number conversion
    if isinstance(a, (JSArray, JSObject)) and (b_num or isinstance(b, str)):
        return loose_equals(to_string(a) if isinstance(b, str) else to_number(a), b)
    if isinstance(b, (JSArray, JSObject)) and (a_num or isinstance(a, str)):
        return loose_equals(a, to_string(b) if isinstance(a, str) else to_number(b))
    return a is b


def is_callable(v: object) -> bool:
    return isinstance(v, (JSFunction, HostFunction, BoundMethod))
