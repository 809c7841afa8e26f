"""Session orchestration: prompt → helper → generators → compile gate →
scene, plus rollback, toggles, and live stepping.

Commands within one session are serialized by a re-entrant lock (single
logical writer); frame publication happens on the ticking thread under the
same lock, so scene state never interleaves.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field
from pathlib import Path

from ..core import (
    CATEGORY_ORDER,
    HistoryCard,
    ScriptArtifact,
    ScriptCategory,
    Session,
    append_card,
    rollback,
)
from ..errors import InvalidStateError, NotFoundError, PingridError
from ..gateway import LlmGateway, ModelConfig
from ..generators import GeneratorRequest, ScriptGenerator
from ..helper import HelperContext, PromptHelper
from ..rag import ExampleStore, seeded_store
from ..runtime import (
    DEFAULT_LIMITS,
    TICK_RATE_HZ,
    CompileError,
    RuntimeLimits,
    Scene,
    load_scene,
)
from ..runtime.scene import StepError
from .events import ERROR_PHASE, EventBus
from .persistence import SessionLog

MAX_REGENS = 3


class GenerationFailedError(PingridError):
    def __init__(self, category: ScriptCategory, last_error: str):
        super().__init__(
            f"{category.value} generation failed after {MAX_REGENS} regenerations: {last_error}"
        )
        self.category = category
        self.last_error = last_error


@dataclass(frozen=True)
class ServiceConfig:
    model_config: ModelConfig
    limits: RuntimeLimits = DEFAULT_LIMITS
    max_regens: int = MAX_REGENS
    tick_hz: float = float(TICK_RATE_HZ)
    sessions_dir: Path | None = None


@dataclass
class SessionState:
    id: str
    session: Session = field(default_factory=Session)
    scene: Scene | None = None
    frame_seq: int = 0

    def __post_init__(self) -> None:
        self.bus = EventBus(session_id=self.id)
        self.lock = threading.RLock()


class SessionManager:
    def __init__(
        self,
        config: ServiceConfig,
        gateway: LlmGateway | None = None,
        store: ExampleStore | None = None,
        clock=time.time,
    ):
        self.config = config
        self.gateway = gateway or LlmGateway(config.model_config)
        self.store = store or seeded_store(self.gateway)
        self.helper = PromptHelper(self.gateway)
        self.generator = ScriptGenerator(gateway=self.gateway, store=self.store)
        self.clock = clock
        self.sessions: dict[str, SessionState] = {}
        self._lock = threading.Lock()
        self._counter = 0
        self._ticker: threading.Thread | None = None
        self._stop = threading.Event()

    # ---- session lifecycle ----

    def create_session(self) -> SessionState:
        with self._lock:
            self._counter += 1
            session_id = f"session-{self._counter}"
            state = SessionState(id=session_id)
            self.sessions[session_id] = state
        if self.config.sessions_dir is not None:
            SessionLog(self.config.sessions_dir, session_id).append({"type": "created"})
        return state

    def get(self, session_id: str) -> SessionState:
        state = self.sessions.get(session_id)
        if state is None:
            raise NotFoundError(f"no session {session_id!r}")
        return state

    # ---- the prompt pipeline ----

    def submit_prompt(self, session_id: str, text: str) -> HistoryCard:
        state = self.get(session_id)
        with state.lock:
            emit = state.bus.emit_feedback
            log = (
                SessionLog(self.config.sessions_dir, session_id)
                if self.config.sessions_dir is not None
                else None
            )
            if log is not None:
                log.append({"type": "prompt", "text": text})
            try:
                card = self._run_pipeline(state, text)
            except PingridError as exc:
                emit(ERROR_PHASE, str(exc))
                raise
            if log is not None:
                from .serialize import card_to_json

                log.append({"type": "card", "card": card_to_json(card)})
            return card

    def _run_pipeline(self, state: SessionState, text: str) -> HistoryCard:
        emit = state.bus.emit_feedback
        ctx = HelperContext.from_session(state.session)
        plan, params, bundle = self.helper.run(text, ctx, feedback=emit)

        parent_card = state.session.active_card
        artifacts: list[ScriptArtifact] = []
        primitive_params: dict[str, float] | None = None

        for category in CATEGORY_ORDER:
            instruction = bundle.for_category(category)
            if instruction is None:
                inherited = self._inherited_artifact(parent_card, category)
                if inherited is not None:
                    artifacts.append(inherited)
                    if category is ScriptCategory.PRIMITIVE:
                        primitive_params = dict(inherited.parameters)
                continue
            parent_params = None
            if category in (ScriptCategory.ANIMATION, ScriptCategory.INTERACTION):
                parent_params = primitive_params or {}
            artifact = self._generate_with_regens(state, category, instruction, parent_params)
            artifacts.append(artifact)
            if category is ScriptCategory.PRIMITIVE:
                primitive_params = dict(artifact.parameters)

        scene = load_scene(artifacts, self.config.limits)
        emit("loaded", f"scene loaded with {len(artifacts)} artifact(s)")
        state.scene = scene

        card = HistoryCard(
            id=f"card-{len(state.session.cards) + 1}",
            parent_id=state.session.active_card_id,
            user_input=text,
            plan=plan,
            instructions=bundle,
            artifacts=artifacts,
            enabled={idx: True for idx in range(len(artifacts))},
            created_at=self.clock(),
        )
        append_card(state.session, card)
        return card

    def _inherited_artifact(
        self, parent_card: HistoryCard | None, category: ScriptCategory
    ) -> ScriptArtifact | None:
        if parent_card is None:
            return None
        for artifact in parent_card.artifacts:
            if artifact.category is category:
                return artifact
        return None

    def _generate_with_regens(
        self,
        state: SessionState,
        category: ScriptCategory,
        instruction: str,
        parent_params: dict[str, float] | None,
    ) -> ScriptArtifact:
        emit = state.bus.emit_feedback
        from ..runtime import compile_check

        request = GeneratorRequest(
            category=category,
            instruction=instruction,
            parent_params=parent_params,
            short_term_memory=state.session.generator_memory.get(category),
        )
        artifact = self.generator.generate(request, session=state.session)
        emit(f"generated:{category.value}", artifact.message)
        last_error = ""
        for attempt in range(self.config.max_regens + 1):
            try:
                compile_check(artifact.source, category, self.config.limits)
                return artifact
            except CompileError as exc:
                last_error = str(exc)
                emit(ERROR_PHASE, f"{category.value} failed to compile: {last_error}")
                if attempt == self.config.max_regens:
                    break
                request = GeneratorRequest(
                    category=category,
                    instruction=instruction,
                    parent_params=parent_params,
                    short_term_memory=artifact.source,
                    compile_error=last_error,
                )
                artifact = self.generator.generate(request, session=state.session)
                emit(f"generated:{category.value}", artifact.message)
        raise GenerationFailedError(category, last_error)

    # ---- scene commands ----

    def set_parameter(self, session_id: str, name: str, value: float) -> None:
        state = self.get(session_id)
        with state.lock:
            if state.scene is None:
                raise InvalidStateError("session has no loaded scene")
            state.scene.set_parameter(name, value)

    def press_button(self, session_id: str, group_id: int, pressed: bool) -> None:
        state = self.get(session_id)
        with state.lock:
            if state.scene is None:
                raise InvalidStateError("session has no loaded scene")
            state.scene.press_button(group_id, pressed)

    def toggle_artifact(self, session_id: str, index: int) -> bool:
        state = self.get(session_id)
        with state.lock:
            card = state.session.active_card
            if card is None or state.scene is None:
                raise InvalidStateError("session has no cards")
            if index not in card.enabled:
                raise NotFoundError(f"no artifact at index {index}")
            new_flag = not card.enabled[index]
            card.enabled[index] = new_flag
            state.scene.set_enabled(card.artifacts[index].category, new_flag)
            return new_flag

    def configure_button(
        self,
        session_id: str,
        group_id: int,
        size: int | None = None,
        x: int | None = None,
        y: int | None = None,
        height: float | None = None,
    ) -> None:
        """Edit one button's footprint/size/height and re-realize it."""
        state = self.get(session_id)
        with state.lock:
            scene = state.scene
            if scene is None:
                raise InvalidStateError("session has no loaded scene")
            target = next((b for b in scene.buttons if b.id == group_id), None)
            if target is None:
                raise NotFoundError(f"unknown button group {group_id}")
            from ..runtime import ButtonSpec

            updated = ButtonSpec(
                id=target.id,
                size=size if size is not None else target.size,
                x=x if x is not None else target.x,
                y=y if y is not None else target.y,
                init_height=height if height is not None else target.init_height,
            )
            new_buttons = [updated if b.id == group_id else b for b in scene.buttons]
            scene.buffer.realize_buttons(new_buttons)
            scene.buttons[:] = new_buttons
            # reflect the edit into the interaction params so the script's
            # own initializeButtons call doesn't undo it
            if scene.inter_params is not None:
                from ..es import JSArray, JSObject

                raw = scene.inter_params.props.get("buttons")
                if isinstance(raw, JSArray):
                    for entry in raw.elements:
                        if isinstance(entry, JSObject) and int(
                            float(entry.props.get("id", -1))
                        ) == group_id:
                            entry.props["size"] = float(updated.size)
                            entry.props["position"] = JSArray([float(updated.x), float(updated.y)])
                            entry.props["init_height"] = float(updated.init_height)

    def rollback_to(self, session_id: str, card_id: str) -> None:
        state = self.get(session_id)
        with state.lock:
            rollback(state.session, card_id)
            card = state.session.card_by_id(card_id)
            scene = load_scene(card.artifacts, self.config.limits)
            for idx, artifact in enumerate(card.artifacts):
                scene.set_enabled(artifact.category, card.enabled[idx])
            state.scene = scene

    # ---- stepping ----

    def advance(self, session_id: str, dt: float) -> None:
        state = self.get(session_id)
        with state.lock:
            if state.scene is None:
                return
            try:
                frame = state.scene.step(dt)
            except StepError as exc:
                state.bus.emit_feedback(ERROR_PHASE, str(exc))
                return
            state.frame_seq += 1
            state.bus.emit_frame(state.frame_seq, list(frame.heights))

    def start_ticker(self) -> None:
        if self.config.tick_hz <= 0 or self._ticker is not None:
            return
        interval = 1.0 / self.config.tick_hz

        def tick_loop() -> None:
            while not self._stop.wait(interval):
                for session_id in list(self.sessions):
                    try:
                        self.advance(session_id, interval)
                    except PingridError:
                        pass

        self._ticker = threading.Thread(target=tick_loop, name="pingrid-ticker", daemon=True)
        self._ticker.start()

    def stop_ticker(self) -> None:
        self._stop.set()
        if self._ticker is not None:
            self._ticker.join(timeout=2.0)
            self._ticker = None
        self._stop = threading.Event()
