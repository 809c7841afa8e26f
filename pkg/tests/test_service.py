from __future__ import annotations

import json

import pytest
from fastapi.testclient import TestClient

from pingrid.core import ScriptCategory
from pingrid.errors import InvalidStateError, NotFoundError
from pingrid.gateway import LlmGateway, ModelConfig
from pingrid.rag import seeded_store
from pingrid.service import (
    CANONICAL_PHASES,
    GenerationFailedError,
    ServiceConfig,
    SessionLog,
    SessionManager,
    create_app,
    logged_cards,
    replay_log,
)

from .fakes import ChainResponder, ScriptedTransport, heart_pipeline_handlers

HEART_PROMPT = (
    "create a heart shape with a pulsing animation, and move the shape left "
    "and right with two buttons"
)
ROTATE_PROMPT = "instead of moving the position, I want it to rotate when I click the button"
DT = 1.0 / 30.0


def make_manager(bad_first_primitive: bool = False, sessions_dir=None) -> SessionManager:
    responder = ChainResponder(heart_pipeline_handlers(bad_first_primitive=bad_first_primitive))
    gateway = LlmGateway(ModelConfig(mode="live"), transport=ScriptedTransport(responder))
    config = ServiceConfig(
        model_config=gateway.config, tick_hz=0.0, sessions_dir=sessions_dir
    )
    return SessionManager(config, gateway=gateway, store=seeded_store(gateway), clock=lambda: 1000.0)


@pytest.fixture
def manager():
    return make_manager()


def feedback_phases(state) -> list[str]:
    return [event.phase for event in state.bus.feedback_log]


class TestSubmitPrompt:
    def test_heart_walkthrough(self, manager):
        state = manager.create_session()
        card = manager.submit_prompt(state.id, HEART_PROMPT)
        assert len(card.artifacts) == 3
        assert [a.category for a in card.artifacts] == [
            ScriptCategory.PRIMITIVE,
            ScriptCategory.ANIMATION,
            ScriptCategory.INTERACTION,
        ]
        assert set(card.artifacts[0].parameters) == {
            "heartPositionX",
            "heartPositionY",
            "heartScale",
            "heartHeight",
        }
        assert state.scene is not None
        assert len(state.scene.sliders) == 4
        assert {b.id for b in state.scene.buttons} == {1, 2}

    def test_feedback_sequence(self, manager):
        state = manager.create_session()
        manager.submit_prompt(state.id, HEART_PROMPT)
        phases = feedback_phases(state)
        assert phases == [
            "segmented",
            "parameters",
            "validated",
            "instructed",
            "generated:primitive",
            "generated:animation",
            "generated:interaction",
            "loaded",
        ]
        non_error = [p for p in phases if p != "error"]
        ordered = [p for p in CANONICAL_PHASES if p in non_error]
        assert non_error == ordered

    def test_card_count_increases_by_one(self, manager):
        state = manager.create_session()
        manager.submit_prompt(state.id, HEART_PROMPT)
        assert len(state.session.cards) == 1
        manager.submit_prompt(state.id, ROTATE_PROMPT)
        assert len(state.session.cards) == 2

    def test_followup_adds_rotation_parameter(self, manager):
        state = manager.create_session()
        first = manager.submit_prompt(state.id, HEART_PROMPT)
        card = manager.submit_prompt(state.id, ROTATE_PROMPT)
        assert card.parent_id == first.id
        primitive = card.artifacts[0]
        assert "heartRotation" in primitive.parameters
        assert card.plan.is_followup is True

    def test_helper_memory_grows(self, manager):
        state = manager.create_session()
        manager.submit_prompt(state.id, HEART_PROMPT)
        assert len(state.session.helper_memory) == 1
        manager.submit_prompt(state.id, ROTATE_PROMPT)
        assert len(state.session.helper_memory) == 2


class TestRegeneration:
    def test_bad_then_good_regenerates_once(self):
        manager = make_manager(bad_first_primitive=True)
        state = manager.create_session()
        card = manager.submit_prompt(state.id, HEART_PROMPT)
        assert state.scene is not None
        phases = feedback_phases(state)
        # generated -> error -> generated again for the primitive
        first_generated = phases.index("generated:primitive")
        error_at = phases.index("error")
        assert error_at > first_generated
        assert "generated:primitive" in phases[error_at + 1 :]
        assert phases.count("generated:primitive") == 2
        assert card.artifacts[0].source.startswith("// Draws a filled heart")

    def test_exhausted_regens_fail(self):
        handlers = heart_pipeline_handlers()
        handlers["primitive_agent"] = lambda messages: json.dumps(
            {
                "type": "primitive",
                "message": "still broken",
                "content": "function initializeParams( { nope",
            }
        )
        responder = ChainResponder(handlers)
        gateway = LlmGateway(ModelConfig(mode="live"), transport=ScriptedTransport(responder))
        manager = SessionManager(
            ServiceConfig(model_config=gateway.config, tick_hz=0.0),
            gateway=gateway,
            store=seeded_store(gateway),
        )
        state = manager.create_session()
        with pytest.raises(GenerationFailedError) as err:
            manager.submit_prompt(state.id, HEART_PROMPT)
        assert err.value.category is ScriptCategory.PRIMITIVE
        assert responder.calls.count("primitive_agent") == 1 + manager.config.max_regens
        assert len(state.session.cards) == 0


class TestSceneCommands:
    def test_slider_write_reflected_in_next_frame(self, manager):
        state = manager.create_session()
        manager.submit_prompt(state.id, HEART_PROMPT)
        manager.advance(state.id, DT)
        frame_before = state.bus.latest_frame["data"]["heights"]
        manager.set_parameter(state.id, "heartHeight", 90.0)
        manager.advance(state.id, DT)
        frame_after = state.bus.latest_frame["data"]["heights"]
        assert max(frame_after) == 90.0
        assert frame_before != frame_after

    def test_toggle_animation_freezes_frames(self, manager):
        state = manager.create_session()
        card = manager.submit_prompt(state.id, HEART_PROMPT)
        anim_index = next(
            i for i, a in enumerate(card.artifacts) if a.category is ScriptCategory.ANIMATION
        )
        manager.toggle_artifact(state.id, anim_index)
        assert card.enabled[anim_index] is False
        manager.advance(state.id, DT)
        first = state.bus.latest_frame["data"]["heights"]
        manager.advance(state.id, DT)
        second = state.bus.latest_frame["data"]["heights"]
        assert first == second

    def test_press_button_moves_heart(self, manager):
        state = manager.create_session()
        manager.submit_prompt(state.id, HEART_PROMPT)
        start = state.scene.parent_params.props["heartPositionX"]
        manager.press_button(state.id, 1, True)
        manager.advance(state.id, DT)
        assert state.scene.parent_params.props["heartPositionX"] == pytest.approx(start + 0.15)

    def test_commands_without_scene_are_invalid_state(self, manager):
        state = manager.create_session()
        with pytest.raises(InvalidStateError):
            manager.set_parameter(state.id, "x", 1.0)
        with pytest.raises(InvalidStateError):
            manager.toggle_artifact(state.id, 0)

    def test_unknown_session(self, manager):
        with pytest.raises(NotFoundError):
            manager.submit_prompt("session-404", "hi")

    def test_configure_button(self, manager):
        state = manager.create_session()
        manager.submit_prompt(state.id, HEART_PROMPT)
        manager.configure_button(state.id, 1, size=2, x=4, y=4, height=80.0)
        button = next(b for b in state.scene.buttons if b.id == 1)
        assert (button.size, button.x, button.y, button.init_height) == (2, 4, 4, 80.0)
        manager.advance(state.id, DT)
        # 2x2 footprint renders at the new height and survives the script's
        # own initializeButtons call
        heights = state.bus.latest_frame["data"]["heights"]
        assert heights[4 * 24 + 4] == 80.0
        assert heights[5 * 24 + 5] == 80.0


class TestRollback:
    def test_rollback_rebuilds_identical_scene(self, manager):
        state = manager.create_session()
        card1 = manager.submit_prompt(state.id, HEART_PROMPT)

        def capture(n: int) -> list[tuple]:
            frames = []
            for _ in range(n):
                manager.advance(state.id, DT)
                frames.append(tuple(state.bus.latest_frame["data"]["heights"]))
            return frames

        original = capture(5)
        manager.submit_prompt(state.id, ROTATE_PROMPT)
        manager.rollback_to(state.id, card1.id)
        assert state.session.active_card_id == card1.id
        assert capture(5) == original

    def test_resubmit_after_rollback_branches(self, manager):
        state = manager.create_session()
        card1 = manager.submit_prompt(state.id, HEART_PROMPT)
        manager.submit_prompt(state.id, ROTATE_PROMPT)
        manager.rollback_to(state.id, card1.id)
        card3 = manager.submit_prompt(state.id, ROTATE_PROMPT)
        assert card3.parent_id == card1.id
        assert len(state.session.cards) == 3

    def test_rollback_unknown_card(self, manager):
        state = manager.create_session()
        manager.submit_prompt(state.id, HEART_PROMPT)
        with pytest.raises(NotFoundError):
            manager.rollback_to(state.id, "card-99")


class TestPersistence:
    def test_replaying_log_reproduces_cards(self, tmp_path):
        manager = make_manager(sessions_dir=tmp_path)
        state = manager.create_session()
        manager.submit_prompt(state.id, HEART_PROMPT)
        manager.submit_prompt(state.id, ROTATE_PROMPT)
        log = SessionLog(tmp_path, state.id)
        recorded = logged_cards(log)
        fresh = make_manager(sessions_dir=None)
        replayed = replay_log(log, fresh)
        assert replayed == recorded


class TestHttpSurface:
    @pytest.fixture
    def client(self, manager):
        app = create_app(manager)
        with TestClient(app) as client:
            yield client

    def create(self, client) -> str:
        return client.post("/sessions").json()["sessionId"]

    def test_prompt_endpoint(self, client):
        session_id = self.create(client)
        response = client.post(f"/sessions/{session_id}/prompt", json={"text": HEART_PROMPT})
        assert response.status_code == 200
        body = response.json()
        assert len(body["card"]["artifacts"]) == 3
        assert len(body["sliders"]) == 4
        slider = next(s for s in body["sliders"] if s["name"] == "heartScale")
        assert slider["min"] == pytest.approx(2.0)
        assert slider["max"] == pytest.approx(18.0)
        assert {b["id"] for b in body["buttons"]} == {1, 2}

    def test_params_buttons_toggle_rollback_history(self, client):
        session_id = self.create(client)
        client.post(f"/sessions/{session_id}/prompt", json={"text": HEART_PROMPT})
        assert client.post(
            f"/sessions/{session_id}/params", json={"name": "heartHeight", "value": 77.0}
        ).status_code == 200
        assert client.post(
            f"/sessions/{session_id}/buttons", json={"groupId": 1, "pressed": True}
        ).status_code == 200
        toggle = client.post(f"/sessions/{session_id}/artifacts/1/toggle")
        assert toggle.json() == {"enabled": False}
        history = client.get(f"/sessions/{session_id}/history").json()
        assert history["activeCardId"] == "card-1"
        assert len(history["cards"]) == 1
        assert client.post(
            f"/sessions/{session_id}/rollback", json={"cardId": "card-1"}
        ).status_code == 200

    def test_button_config_endpoint(self, client):
        session_id = self.create(client)
        client.post(f"/sessions/{session_id}/prompt", json={"text": HEART_PROMPT})
        response = client.post(
            f"/sessions/{session_id}/buttons/2/config",
            json={"size": 2, "posX": 3, "posY": 10, "height": 60.0},
        )
        assert response.status_code == 200

    def test_error_mapping(self, client):
        session_id = self.create(client)
        assert client.post(
            f"/sessions/{session_id}/params", json={"name": "x", "value": 1.0}
        ).status_code == 409
        client.post(f"/sessions/{session_id}/prompt", json={"text": HEART_PROMPT})
        assert client.post(
            f"/sessions/{session_id}/params", json={"name": "nope", "value": 1.0}
        ).status_code == 404
        assert client.post(
            f"/sessions/{session_id}/rollback", json={"cardId": "card-9"}
        ).status_code == 404
        assert client.get("/sessions/nope/history").status_code == 404

    def test_event_stream_carries_feedback_and_frames(self, client, manager):
        session_id = self.create(client)
        client.post(f"/sessions/{session_id}/prompt", json={"text": HEART_PROMPT})
        manager.advance(session_id, DT)
        events = []
        # submit emitted 8 feedback events, advance 1 frame: all in backlog
        with client.stream("GET", f"/sessions/{session_id}/events?limit=9") as stream:
            current_event = None
            for line in stream.iter_lines():
                if line.startswith("event: "):
                    current_event = line.split(": ", 1)[1]
                elif line.startswith("data: ") and current_event:
                    events.append((current_event, json.loads(line.split(": ", 1)[1])))
        kinds = [kind for kind, _ in events]
        assert kinds.count("feedback") == 8
        assert "frame" in kinds
        frame = next(data for kind, data in events if kind == "frame")
        assert len(frame["heights"]) == 576
        assert frame["seq"] == 1
        phases = [data["phase"] for kind, data in events if kind == "feedback"]
        assert phases[0] == "segmented"
        assert phases[-1] == "loaded"
