"""The host surface visible to sandboxed scripts.

Scripts see exactly: ShapeDisplay (grid_x, grid_y, Pins, getPin), Pin objects
(setPos, isButton, isPressing, buttonGroup_id), and initializeButtons. All
of it reads and writes one GridBuffer owned by the embedding scene; nothing
else of the host leaks in.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..core import GRID_X, GRID_Y, MAX_HEIGHT, PIN_COUNT
from ..errors import ValidationError
from ..es import UNDEF, HostFunction, HostObject, JSArray, JSObject, to_number
from ..es.errors import ESRuntimeError


@dataclass
class ButtonSpec:
    """One button group: footprint anchor, size (1x1 or 2x2), rest height."""

    id: int
    size: int
    x: int
    y: int
    init_height: float

    def __post_init__(self) -> None:
        if self.size not in (1, 2):
            raise ValidationError(f"button size must be 1 or 2, got {self.size}")
        if not (0 <= self.x and self.x + self.size <= GRID_X and 0 <= self.y and self.y + self.size <= GRID_Y):
            raise ValidationError(
                f"button {self.id} footprint at ({self.x}, {self.y}) size {self.size} leaves the grid"
            )
        if not (0.0 <= self.init_height <= MAX_HEIGHT):
            raise ValidationError(f"button {self.id} init height {self.init_height} outside [0, 100]")

    def footprint(self) -> list[int]:
        return [
            (self.y + dy) * GRID_X + (self.x + dx)
            for dy in range(self.size)
            for dx in range(self.size)
        ]


@dataclass
class GridBuffer:
    """Mutable frame state: heights plus per-pin button flags."""

    heights: list[float] = field(default_factory=lambda: [0.0] * PIN_COUNT)
    is_button: list[bool] = field(default_factory=lambda: [False] * PIN_COUNT)
    is_pressing: list[bool] = field(default_factory=lambda: [False] * PIN_COUNT)
    group_id: list[int | None] = field(default_factory=lambda: [None] * PIN_COUNT)

    def clear_non_buttons(self) -> None:
        for i in range(PIN_COUNT):
            if not self.is_button[i]:
                self.heights[i] = 0.0

    def clamp(self) -> None:
        for i, h in enumerate(self.heights):
            if h != h:  # NaN renders as retracted
                self.heights[i] = 0.0
            elif h < 0.0:
                self.heights[i] = 0.0
            elif h > MAX_HEIGHT:
                self.heights[i] = MAX_HEIGHT

    def clear_buttons(self) -> None:
        for i in range(PIN_COUNT):
            self.is_button[i] = False
            self.is_pressing[i] = False
            self.group_id[i] = None

    def realize_buttons(self, buttons: list[ButtonSpec]) -> None:
        seen: set[int] = set()
        for button in buttons:
            if button.id in seen:
                raise ValidationError(f"duplicate button group id {button.id}")
            seen.add(button.id)
        self.clear_buttons()
        for button in buttons:
            for idx in button.footprint():
                self.is_button[idx] = True
                self.group_id[idx] = button.id


class PinHost(HostObject):
    host_name = "Pin"
    __slots__ = ("index", "buffer", "_set_pos")

    def __init__(self, index: int, buffer: GridBuffer):
        self.index = index
        self.buffer = buffer

        def set_pos(interp, this, args):
            height = to_number(args[0]) if args else 0.0
            buffer.heights[index] = height
            return UNDEF

        self._set_pos = HostFunction("setPos", set_pos)

    def get_prop(self, name: str):
        if name == "setPos":
            return self._set_pos
        if name == "isButton":
            return self.buffer.is_button[self.index]
        if name == "isPressing":
            return self.buffer.is_pressing[self.index]
        if name == "buttonGroup_id":
            group = self.buffer.group_id[self.index]
            return float(group) if group is not None else None
        if name == "index":
            return float(self.index)
        return UNDEF

    def keys(self) -> list[str]:
        return ["setPos", "isButton", "isPressing", "buttonGroup_id", "index"]


class ShapeDisplayHost(HostObject):
    host_name = "ShapeDisplay"
    __slots__ = ("pins", "_pins_array", "_get_pin")

    def __init__(self, buffer: GridBuffer):
        self.pins = [PinHost(i, buffer) for i in range(PIN_COUNT)]
        self._pins_array = JSArray(list(self.pins))

        def get_pin(interp, this, args):
            idx = int(to_number(args[0])) if args else -1
            if not (0 <= idx < PIN_COUNT):
                raise ESRuntimeError("RangeError", f"pin index {idx} out of range")
            return self.pins[idx]

        self._get_pin = HostFunction("getPin", get_pin)

    def get_prop(self, name: str):
        if name == "grid_x":
            return float(GRID_X)
        if name == "grid_y":
            return float(GRID_Y)
        if name == "Pins":
            return self._pins_array
        if name == "getPin":
            return self._get_pin
        return UNDEF

    def keys(self) -> list[str]:
        return ["grid_x", "grid_y", "Pins", "getPin"]


def buttons_from_params(params: JSObject) -> list[ButtonSpec]:
    """Decode the `buttons` list an interaction initializer returns."""
    raw = params.props.get("buttons")
    if not isinstance(raw, JSArray):
        return []
    specs: list[ButtonSpec] = []
    for entry in raw.elements:
        if not isinstance(entry, JSObject):
            raise ValidationError("button entries must be objects")
        props = entry.props
        position = props.get("position")
        if isinstance(position, JSArray) and len(position.elements) >= 2:
            x = int(to_number(position.elements[0]))
            y = int(to_number(position.elements[1]))
        elif isinstance(position, JSObject):
            x = int(to_number(position.props.get("x", 0.0)))
            y = int(to_number(position.props.get("y", 0.0)))
        else:
            raise ValidationError("button position must be [x, y] or {x, y}")
        specs.append(
            ButtonSpec(
                id=int(to_number(props.get("id", 0.0))),
                size=int(to_number(props.get("size", 1.0))),
                x=x,
                y=y,
                init_height=to_number(props.get("init_height", 50.0)),
            )
        )
    return specs


def make_initialize_buttons(buffer: GridBuffer, sink: list[ButtonSpec]):
    """Host hook scripts call at the top of dynamicInteraction; wrap the
    returned callable in a HostFunction. Idempotent: re-realizes only when
    the decoded specs changed."""

    def initialize_buttons(interp, this, args):
        params = args[0] if args else None
        if not isinstance(params, JSObject):
            raise ESRuntimeError("TypeError", "initializeButtons expects the interaction params object")
        try:
            specs = buttons_from_params(params)
        except ValidationError as exc:
            raise ESRuntimeError("RangeError", str(exc)) from None
        if specs != sink:
            # preserve press state for groups that survive the re-realization
            pressed = {g for g in {b.id for b in specs} if _group_pressed(buffer, g)}
            buffer.realize_buttons(specs)
            sink[:] = specs
            for group in pressed:
                set_group_pressing(buffer, group, True)
        return UNDEF

    return initialize_buttons


def _group_pressed(buffer: GridBuffer, group: int) -> bool:
    return any(
        buffer.is_pressing[i] and buffer.group_id[i] == group for i in range(PIN_COUNT)
    )


def set_group_pressing(buffer: GridBuffer, group: int, pressed: bool) -> bool:
    found = False
    for i in range(PIN_COUNT):
        if buffer.group_id[i] == group:
            buffer.is_pressing[i] = pressed
            found = True
    return found
