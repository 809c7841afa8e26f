"""Domain types shared by every subsystem.

The unit of rendering is a 24x24 height field; heights are logical units in
[0, 100], one unit per millimetre of pin stroke. All types here are plain
values, safe to copy between threads; Session mutation is serialized by the
service layer.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from enum import Enum

from ..errors import ValidationError

GRID_X = 24
GRID_Y = 24
PIN_COUNT = GRID_X * GRID_Y  # 576
MAX_HEIGHT = 100.0

_IDENT_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class ScriptCategory(str, Enum):
    """The three generative elements: base geometry, time-driven motion,
    and user-triggered behavior."""

    PRIMITIVE = "primitive"
    ANIMATION = "animation"
    INTERACTION = "interaction"


CATEGORY_ORDER = (
    ScriptCategory.PRIMITIVE,
    ScriptCategory.ANIMATION,
    ScriptCategory.INTERACTION,
)


@dataclass(frozen=True)
class HeightField:
    """Row-major pin heights: index i = y * 24 + x, heights in [0, 100]."""

    heights: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.heights) != PIN_COUNT:
            raise ValidationError(
                f"height field must have {PIN_COUNT} entries, got {len(self.heights)}"
            )
        for h in self.heights:
            if not (0.0 <= h <= MAX_HEIGHT):
                raise ValidationError(f"height {h!r} outside [0, {MAX_HEIGHT}]")

    @staticmethod
    def zeros() -> "HeightField":
        return HeightField(heights=(0.0,) * PIN_COUNT)

    def at(self, x: int, y: int) -> float:
        return self.heights[pin_index(x, y)]


@dataclass(frozen=True)
class ScriptArtifact:
    """One generated script plus the metadata the UI and runtime need."""

    category: ScriptCategory
    message: str
    source: str
    parameters: dict[str, float] = field(default_factory=dict)
    explanation: str | None = None
    origin_prompt: str = ""

    def __post_init__(self) -> None:
        for name, value in self.parameters.items():
            if not name:
                raise ValidationError("artifact parameter names must be non-empty")
            if not math.isfinite(value):
                raise ValidationError(f"parameter {name!r} has non-finite value {value!r}")


@dataclass(frozen=True)
class SegmentPlan:
    """Three-way decomposition of a user prompt plus the follow-up flag."""

    is_followup: bool
    primitive: str | None
    animation: str | None
    interaction: str | None

    def __post_init__(self) -> None:
        if not self.is_followup and self.primitive is None:
            raise ValidationError("a non-follow-up plan must carry a primitive segment")

    def segments(self) -> dict[ScriptCategory, str | None]:
        return {
            ScriptCategory.PRIMITIVE: self.primitive,
            ScriptCategory.ANIMATION: self.animation,
            ScriptCategory.INTERACTION: self.interaction,
        }


@dataclass(frozen=True)
class ParameterSet:
    """Ordered unique identifier names a primitive must expose."""

    names: tuple[str, ...]

    def __post_init__(self) -> None:
        seen = set()
        for name in self.names:
            if not _IDENT_RE.match(name):
                raise ValidationError(f"parameter name {name!r} is not a valid identifier")
            if name in seen:
                raise ValidationError(f"duplicate parameter name {name!r}")
            seen.add(name)

    def union(self, extra: "ParameterSet") -> "ParameterSet":
        merged = list(self.names)
        for name in extra.names:
            if name not in merged:
                merged.append(name)
        return ParameterSet(names=tuple(merged))


@dataclass(frozen=True)
class ValidationVerdict:
    """Outcome of checking a ParameterSet against a plan's auxiliary segments."""

    success: bool
    message: str
    updated_params: ParameterSet | None = None

    def __post_init__(self) -> None:
        if self.success and self.updated_params is not None:
            raise ValidationError("updated_params only accompanies a failed verdict")
        if not self.success and self.updated_params is None:
            raise ValidationError("a failed verdict must supply updated_params")


@dataclass(frozen=True)
class InstructionBundle:
    """Per-segment code instructions; None mirrors a None plan segment."""

    primitive: str | None
    animation: str | None
    interaction: str | None

    def for_category(self, category: ScriptCategory) -> str | None:
        return {
            ScriptCategory.PRIMITIVE: self.primitive,
            ScriptCategory.ANIMATION: self.animation,
            ScriptCategory.INTERACTION: self.interaction,
        }[category]

    def bracketed_names(self) -> set[str]:
        """All [name] references across the three instructions."""
        names: set[str] = set()
        for text in (self.primitive, self.animation, self.interaction):
            if text:
                names.update(re.findall(r"\[([A-Za-z_][A-Za-z0-9_]*)\]", text))
        return names


@dataclass
class HistoryCard:
    """One authoring turn: the plan, instructions, and generated artifacts."""

    id: str
    parent_id: str | None
    user_input: str
    plan: SegmentPlan
    instructions: InstructionBundle
    artifacts: list[ScriptArtifact]
    enabled: dict[int, bool]
    created_at: float

    def __post_init__(self) -> None:
        if set(self.enabled.keys()) != set(range(len(self.artifacts))):
            raise ValidationError("enabled flags must cover each artifact exactly once")


@dataclass
class Session:
    """Append-only authoring timeline plus per-generator short-term memory."""

    cards: list[HistoryCard] = field(default_factory=list)
    active_card_id: str | None = None
    generator_memory: dict[ScriptCategory, str | None] = field(
        default_factory=lambda: {c: None for c in CATEGORY_ORDER}
    )
    helper_memory: list[tuple[str, InstructionBundle]] = field(default_factory=list)

    def card_by_id(self, card_id: str) -> HistoryCard:
        for card in self.cards:
            if card.id == card_id:
                return card
        from ..errors import NotFoundError

        raise NotFoundError(f"no card with id {card_id!r}")

    @property
    def active_card(self) -> HistoryCard | None:
        if self.active_card_id is None:
            return None
        return self.card_by_id(self.active_card_id)


@dataclass(frozen=True)
class SliderSpec:
    """UI slider bounds for one primitive parameter."""

    name: str
    initial: float
    min: float
    max: float

    def __post_init__(self) -> None:
        if not (self.min <= self.initial <= self.max):
            raise ValidationError(
                f"slider {self.name!r}: need min <= initial <= max, "
                f"got {self.min} / {self.initial} / {self.max}"
            )


def pin_index(x: int, y: int) -> int:
    """Row-major pin index: x is the column, y the row."""
    if not (0 <= x < GRID_X) or not (0 <= y < GRID_Y):
        raise ValidationError(f"pin coordinates ({x}, {y}) outside the {GRID_X}x{GRID_Y} grid")
    return y * GRID_X + x


def slider_bounds(initial: float) -> SliderSpec:
    """Bounds for a parameter slider: x3 above, /3 below the initial value.

    Negative initials swap the scaled endpoints to keep min <= max; a zero
    initial gets the fixed [-10, 10] window (scaling zero degenerates).
    """
    return slider_bounds_named("value", initial)


def slider_bounds_named(name: str, initial: float) -> SliderSpec:
    if isinstance(initial, bool) or not isinstance(initial, (int, float)):
        raise ValidationError(f"slider initial for {name!r} must be a number")
    if not math.isfinite(initial):
        raise ValidationError(f"slider initial for {name!r} must be finite, got {initial!r}")
    initial = float(initial)
    if initial > 0:
        lo, hi = initial / 3.0, initial * 3.0
    elif initial < 0:
        lo, hi = initial * 3.0, initial / 3.0
    else:
        lo, hi = -10.0, 10.0
    return SliderSpec(name=name, initial=initial, min=lo, max=hi)
