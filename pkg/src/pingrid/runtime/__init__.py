from .hostapi import ButtonSpec, GridBuffer, PinHost, ShapeDisplayHost
from .scene import (
    DEFAULT_LIMITS,
    PRESS_DEPTH_RATIO,
    TICK_RATE_HZ,
    CompileError,
    RuntimeLimits,
    Scene,
    SceneError,
    StepError,
    compile_check,
    extract_parameters,
    load_scene,
)

__all__ = [
    "DEFAULT_LIMITS",
    "PRESS_DEPTH_RATIO",
    "TICK_RATE_HZ",
    "ButtonSpec",
    "CompileError",
    "GridBuffer",
    "PinHost",
    "RuntimeLimits",
    "Scene",
    "SceneError",
    "ShapeDisplayHost",
    "StepError",
    "compile_check",
    "extract_parameters",
    "load_scene",
]
