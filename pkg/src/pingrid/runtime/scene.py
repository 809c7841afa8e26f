"""Scene loading and deterministic frame stepping.

A scene owns one primitive artifact plus optional animation and interaction
artifacts, each instantiated in its own fresh realm. Frame order: clear
non-button pins, interaction, animation, primitive render, button render,
clamp. Identical artifacts plus an identical event sequence always produce
an identical frame sequence (realm PRNGs are seeded at load).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..core import (
    MAX_HEIGHT,
    HeightField,
    ScriptArtifact,
    ScriptCategory,
    SliderSpec,
    slider_bounds_named,
)
from ..errors import NotFoundError, PingridError, ValidationError
from ..es import ESError, Interp, JSObject, to_display
from ..es.errors import (
    BudgetExceededError,
    ESRuntimeError,
    ESSyntaxError,
    ResourceLimitError,
    StackDepthError,
)
from ..es.interp import ESThrowSignal
from .hostapi import (
    ButtonSpec,
    GridBuffer,
    ShapeDisplayHost,
    buttons_from_params,
    make_initialize_buttons,
    set_group_pressing,
)

PRESS_DEPTH_RATIO = 0.5
TICK_RATE_HZ = 30


@dataclass(frozen=True)
class RuntimeLimits:
    """Sandbox budgets. frame_budget governs live stepping; trial_budget is
    the compile-check trial frame, sized so a hostile loop dies well inside
    100 ms on this evaluator."""

    frame_budget: int = 5_000_000
    trial_budget: int = 30_000
    init_budget: int = 200_000
    max_array: int = 100_000
    max_string: int = 1_000_000
    max_call_depth: int = 64


DEFAULT_LIMITS = RuntimeLimits()


class CompileError(PingridError):
    """Script failed to load: phase is parse | instantiate | entrypoint |
    trial-frame."""

    def __init__(self, phase: str, message: str):
        super().__init__(f"[{phase}] {message}")
        self.phase = phase
        self.detail = message


class SceneError(PingridError):
    """Artifact set cannot form a scene."""


class StepError(PingridError):
    """A script failed mid-frame; the scene itself stays usable."""

    def __init__(self, category: ScriptCategory, message: str):
        super().__init__(f"{category.value}: {message}")
        self.category = category
        self.detail = message


_ENTRY_POINTS = {
    ScriptCategory.PRIMITIVE: ("initializeParams", "dynamicScript"),
    ScriptCategory.ANIMATION: ("initializeParams", "dynamicScript"),
    ScriptCategory.INTERACTION: ("initializeInteractionParameters", "dynamicInteraction"),
}


def _sandbox_error_text(exc: Exception) -> str:
    if isinstance(exc, ESThrowSignal):
        return f"uncaught {to_display(exc.value)}"
    return str(exc)


class _Realm:
    """One instantiated artifact: its interpreter plus resolved entry points."""

    def __init__(
        self,
        artifact: ScriptArtifact,
        limits: RuntimeLimits,
        buffer: GridBuffer,
        buttons: list[ButtonSpec],
        seed: int,
        budget: int | None = None,
    ):
        from ..es import HostFunction

        self.artifact = artifact
        self.limits = limits
        self.interp = Interp(
            budget=budget if budget is not None else limits.init_budget,
            max_array=limits.max_array,
            max_string=limits.max_string,
            max_depth=limits.max_call_depth,
            rng_seed=seed,
        )
        self.interp.bind_global("ShapeDisplay", ShapeDisplayHost(buffer))
        self.interp.bind_global(
            "initializeButtons",
            HostFunction("initializeButtons", make_initialize_buttons(buffer, buttons)),
        )
        self.interp.run(artifact.source)
        init_name, loop_name = _ENTRY_POINTS[artifact.category]
        self.init_fn = self.interp.global_get(init_name)
        self.loop_fn = self.interp.global_get(loop_name)

    def call_initializer(self) -> JSObject:
        result = self.interp.call(self.init_fn, [])
        if not isinstance(result, JSObject):
            raise ESRuntimeError("TypeError", "initializer must return an object of parameters")
        return result


def _check_entry_points(realm_interp: Interp, category: ScriptCategory) -> None:
    init_name, loop_name = _ENTRY_POINTS[category]
    init_fn = realm_interp.global_get(init_name)
    loop_fn = realm_interp.global_get(loop_name)
    from ..es import HostFunction, JSFunction as _JSFunction

    if not isinstance(init_fn, (_JSFunction, HostFunction)):
        raise CompileError("entrypoint", f"missing required function {init_name}()")
    if not isinstance(loop_fn, (_JSFunction, HostFunction)):
        raise CompileError("entrypoint", f"missing required function {loop_name}()")
    if category is ScriptCategory.ANIMATION and isinstance(loop_fn, _JSFunction) and loop_fn.length < 3:
        raise CompileError(
            "entrypoint",
            f"{loop_name}() must accept (deltaTime, params, parentparams); declared arity {loop_fn.length}",
        )
    if category is ScriptCategory.INTERACTION and isinstance(loop_fn, _JSFunction) and loop_fn.length < 3:
        raise CompileError(
            "entrypoint",
            f"{loop_name}() must accept (deltaTime, params, parentParams); declared arity {loop_fn.length}",
        )


def compile_check(source: str, category: ScriptCategory, limits: RuntimeLimits = DEFAULT_LIMITS) -> None:
    """Parse, instantiate, verify entry points, and run one guarded trial
    frame. Raises CompileError with the failing phase; returns None on ok."""
    from ..es import parse as es_parse

    try:
        es_parse(source)
    except ESSyntaxError as exc:
        raise CompileError("parse", str(exc)) from None

    buffer = GridBuffer()
    buttons: list[ButtonSpec] = []
    artifact = ScriptArtifact(category=category, message="", source=source)
    try:
        # instantiation shares the tight trial budget so hostile top-level
        # code dies just as fast as a hostile frame
        realm = _Realm(artifact, limits, buffer, buttons, seed=0, budget=limits.trial_budget)
    except (ESRuntimeError, ESThrowSignal, BudgetExceededError, ResourceLimitError, StackDepthError) as exc:
        raise CompileError("instantiate", _sandbox_error_text(exc)) from None

    _check_entry_points(realm.interp, category)

    realm.interp.reset_budget(limits.trial_budget)
    dt = 1.0 / TICK_RATE_HZ
    try:
        params = realm.call_initializer()
        if category is ScriptCategory.PRIMITIVE:
            realm.interp.call(realm.loop_fn, [dt, params])
        else:
            realm.interp.call(realm.loop_fn, [dt, params, JSObject()])
    except (ESRuntimeError, ESThrowSignal, BudgetExceededError, ResourceLimitError, StackDepthError, ValidationError) as exc:
        raise CompileError("trial-frame", _sandbox_error_text(exc)) from None


def extract_parameters(source: str, category: ScriptCategory, limits: RuntimeLimits = DEFAULT_LIMITS) -> dict[str, float]:
    """Ground-truth parameter map: evaluate the initializer in a scratch
    realm and keep the finite numeric entries."""
    buffer = GridBuffer()
    artifact = ScriptArtifact(category=category, message="", source=source)
    try:
        realm = _Realm(artifact, limits, buffer, [], seed=0)
        realm.interp.reset_budget(limits.init_budget)
        params = realm.call_initializer()
    except (ESError, ESThrowSignal) as exc:
        raise CompileError("instantiate", _sandbox_error_text(exc)) from None
    out: dict[str, float] = {}
    for name, value in params.props.items():
        if isinstance(value, bool):
            continue
        if isinstance(value, float) and value == value and abs(value) != float("inf"):
            out[name] = value
    return out


@dataclass
class Scene:
    """Loaded artifact set plus all mutable frame state."""

    artifacts: dict[ScriptCategory, ScriptArtifact]
    realms: dict[ScriptCategory, _Realm]
    parent_params: JSObject
    anim_params: JSObject | None
    inter_params: JSObject | None
    buttons: list[ButtonSpec]
    buffer: GridBuffer
    enabled: dict[ScriptCategory, bool]
    sliders: list[SliderSpec]
    limits: RuntimeLimits = DEFAULT_LIMITS
    frame_count: int = 0

    def height_field(self) -> HeightField:
        return HeightField(heights=tuple(self.buffer.heights))

    # -- commands --

    def set_parameter(self, name: str, value: float) -> None:
        if name not in self.parent_params.props:
            raise NotFoundError(f"unknown parameter {name!r}")
        self.parent_params.props[name] = float(value)

    def press_button(self, group_id: int, pressed: bool) -> None:
        if not any(b.id == group_id for b in self.buttons):
            raise NotFoundError(f"unknown button group {group_id}")
        set_group_pressing(self.buffer, group_id, pressed)

    def set_enabled(self, category: ScriptCategory, flag: bool) -> None:
        if category not in self.artifacts:
            raise NotFoundError(f"no {category.value} artifact in scene")
        self.enabled[category] = flag

    # -- stepping --

    def step(self, dt: float) -> HeightField:
        if not (dt > 0):
            raise ValidationError(f"deltaTime must be positive, got {dt}")
        self.frame_count += 1
        buffer = self.buffer
        buffer.clear_non_buttons()

        interaction = self.realms.get(ScriptCategory.INTERACTION)
        if interaction is not None and self.enabled.get(ScriptCategory.INTERACTION, True):
            self._run_script(
                ScriptCategory.INTERACTION,
                interaction,
                [dt, self.inter_params, self.parent_params],
            )

        animation = self.realms.get(ScriptCategory.ANIMATION)
        if animation is not None and self.enabled.get(ScriptCategory.ANIMATION, True):
            self._run_script(
                ScriptCategory.ANIMATION,
                animation,
                [dt, self.anim_params, self.parent_params],
            )

        primitive = self.realms.get(ScriptCategory.PRIMITIVE)
        if primitive is not None and self.enabled.get(ScriptCategory.PRIMITIVE, True):
            self._run_script(ScriptCategory.PRIMITIVE, primitive, [dt, self.parent_params])

        self._render_buttons()
        buffer.clamp()
        return self.height_field()

    def _run_script(self, category: ScriptCategory, realm: _Realm, args: list) -> None:
        realm.interp.reset_budget(self.limits.frame_budget)
        try:
            realm.interp.call(realm.loop_fn, args)
        except (ESRuntimeError, ESThrowSignal, BudgetExceededError, ResourceLimitError, StackDepthError) as exc:
            self._render_buttons()
            self.buffer.clamp()
            raise StepError(category, _sandbox_error_text(exc)) from None

    def _render_buttons(self) -> None:
        for button in self.buttons:
            for idx in button.footprint():
                height = button.init_height
                if self.buffer.is_pressing[idx]:
                    height *= PRESS_DEPTH_RATIO
                self.buffer.heights[idx] = height


def load_scene(artifacts: list[ScriptArtifact], limits: RuntimeLimits = DEFAULT_LIMITS) -> Scene:
    """Build a scene from one primitive and optional animation/interaction
    artifacts; all must already pass compile_check."""
    by_category: dict[ScriptCategory, ScriptArtifact] = {}
    for artifact in artifacts:
        if artifact.category in by_category:
            raise SceneError(f"duplicate {artifact.category.value} artifact")
        by_category[artifact.category] = artifact
    if ScriptCategory.PRIMITIVE not in by_category:
        raise SceneError("a scene requires exactly one primitive artifact")

    for artifact in by_category.values():
        compile_check(artifact.source, artifact.category, limits)

    buffer = GridBuffer()
    buttons: list[ButtonSpec] = []
    realms: dict[ScriptCategory, _Realm] = {}
    seeds = {ScriptCategory.PRIMITIVE: 1, ScriptCategory.ANIMATION: 2, ScriptCategory.INTERACTION: 3}
    for category, artifact in by_category.items():
        try:
            realms[category] = _Realm(artifact, limits, buffer, buttons, seed=seeds[category])
        except (ESError, ESThrowSignal) as exc:
            raise SceneError(f"{category.value} failed to instantiate: {_sandbox_error_text(exc)}") from None

    try:
        parent_params = realms[ScriptCategory.PRIMITIVE].call_initializer()
        anim_params = (
            realms[ScriptCategory.ANIMATION].call_initializer()
            if ScriptCategory.ANIMATION in realms
            else None
        )
        inter_params = (
            realms[ScriptCategory.INTERACTION].call_initializer()
            if ScriptCategory.INTERACTION in realms
            else None
        )
    except (ESError, ESThrowSignal) as exc:
        raise SceneError(f"initializer failed: {_sandbox_error_text(exc)}") from None

    if inter_params is not None:
        buttons_decoded = buttons_from_params(inter_params)
        buffer.realize_buttons(buttons_decoded)
        buttons[:] = buttons_decoded

    sliders = [
        slider_bounds_named(name, value)
        for name, value in parent_params.props.items()
        if isinstance(value, float) and not isinstance(value, bool)
    ]

    scene = Scene(
        artifacts=by_category,
        realms=realms,
        parent_params=parent_params,
        anim_params=anim_params,
        inter_params=inter_params,
        buttons=buttons,
        buffer=buffer,
        enabled={category: True for category in by_category},
        sliders=sliders,
        limits=limits,
    )
    scene._render_buttons()
    scene.buffer.clamp()
    return scene
