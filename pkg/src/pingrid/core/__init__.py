from .history import append_card, parent_chain, rollback
from .types import (
    CATEGORY_ORDER,
    GRID_X,
    GRID_Y,
    MAX_HEIGHT,
    PIN_COUNT,
    HeightField,
    HistoryCard,
    InstructionBundle,
    ParameterSet,
    ScriptArtifact,
    ScriptCategory,
    SegmentPlan,
    Session,
    SliderSpec,
    ValidationVerdict,
    pin_index,
    slider_bounds,
    slider_bounds_named,
)

__all__ = [
    "CATEGORY_ORDER",
    "GRID_X",
    "GRID_Y",
    "MAX_HEIGHT",
    "PIN_COUNT",
    "HeightField",
    "HistoryCard",
    "InstructionBundle",
    "ParameterSet",
    "ScriptArtifact",
    "ScriptCategory",
    "SegmentPlan",
    "Session",
    "SliderSpec",
    "ValidationVerdict",
    "append_card",
    "parent_chain",
    "pin_index",
    "rollback",
    "slider_bounds",
    "slider_bounds_named",
]
