"""HTTP + server-sent-event surface.

Endpoints (JSON bodies):
  POST /sessions
  POST /sessions/{id}/prompt              {text}
  POST /sessions/{id}/params              {name, value}
  POST /sessions/{id}/buttons             {groupId, pressed}
  POST /sessions/{id}/buttons/{groupId}/config   {size?, posX?, posY?, height?}
  POST /sessions/{id}/artifacts/{index}/toggle
  POST /sessions/{id}/rollback            {cardId}
  GET  /sessions/{id}/history
  GET  /sessions/{id}/events   (SSE: feedback + frame messages)
"""

from __future__ import annotations

import json
import queue

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, StreamingResponse
from pydantic import BaseModel

from ..errors import InvalidStateError, NotFoundError, PingridError, ValidationError
from ..gateway import ReplayMissError
from ..runtime import CompileError, SceneError
from .serialize import card_to_json, slider_to_json
from .sessions import GenerationFailedError, SessionManager


class PromptBody(BaseModel):
    text: str


class ParamBody(BaseModel):
    name: str
    value: float


class ButtonBody(BaseModel):
    groupId: int
    pressed: bool


class ButtonConfigBody(BaseModel):
    size: int | None = None
    posX: int | None = None
    posY: int | None = None
    height: float | None = None


class RollbackBody(BaseModel):
    cardId: str


def _status_for(exc: PingridError) -> int:
    if isinstance(exc, NotFoundError):
        return 404
    if isinstance(exc, (ValidationError, SceneError)):
        return 400
    if isinstance(exc, InvalidStateError):
        return 409
    if isinstance(exc, (GenerationFailedError, CompileError, ReplayMissError)):
        return 422
    return 500


def create_app(manager: SessionManager) -> FastAPI:
    from contextlib import asynccontextmanager

    @asynccontextmanager
    async def lifespan(_app: FastAPI):
        manager.start_ticker()
        yield
        manager.stop_ticker()

    app = FastAPI(title="pingrid", version="0.1.0", lifespan=lifespan)
    app.state.manager = manager

    @app.exception_handler(PingridError)
    async def pingrid_error_handler(request: Request, exc: PingridError):
        return JSONResponse(
            status_code=_status_for(exc),
            content={"error": type(exc).__name__, "detail": str(exc)},
        )

    @app.post("/sessions")
    def create_session():
        state = manager.create_session()
        return {"sessionId": state.id}

    @app.post("/sessions/{session_id}/prompt")
    def submit_prompt(session_id: str, body: PromptBody):
        card = manager.submit_prompt(session_id, body.text)
        state = manager.get(session_id)
        sliders = [slider_to_json(s) for s in (state.scene.sliders if state.scene else [])]
        buttons = [
            {"id": b.id, "size": b.size, "posX": b.x, "posY": b.y, "height": b.init_height}
            for b in (state.scene.buttons if state.scene else [])
        ]
        return {"card": card_to_json(card), "sliders": sliders, "buttons": buttons}

    @app.post("/sessions/{session_id}/params")
    def set_param(session_id: str, body: ParamBody):
        manager.set_parameter(session_id, body.name, body.value)
        return {"ok": True}

    @app.post("/sessions/{session_id}/buttons")
    def press_button(session_id: str, body: ButtonBody):
        manager.press_button(session_id, body.groupId, body.pressed)
        return {"ok": True}

    @app.post("/sessions/{session_id}/buttons/{group_id}/config")
    def configure_button(session_id: str, group_id: int, body: ButtonConfigBody):
        manager.configure_button(
            session_id, group_id, size=body.size, x=body.posX, y=body.posY, height=body.height
        )
        return {"ok": True}

    @app.post("/sessions/{session_id}/artifacts/{index}/toggle")
    def toggle_artifact(session_id: str, index: int):
        enabled = manager.toggle_artifact(session_id, index)
        return {"enabled": enabled}

    @app.post("/sessions/{session_id}/rollback")
    def rollback_to(session_id: str, body: RollbackBody):
        manager.rollback_to(session_id, body.cardId)
        return {"activeCardId": body.cardId}

    @app.get("/sessions/{session_id}/history")
    def history(session_id: str):
        state = manager.get(session_id)
        return {
            "activeCardId": state.session.active_card_id,
            "cards": [card_to_json(card) for card in state.session.cards],
        }

    @app.get("/sessions/{session_id}/events")
    async def events(session_id: str, limit: int | None = None):
        import anyio

        state = manager.get(session_id)

        async def stream():
            # async generator: cancellable at the sleep when the client
            # disconnects; an explicit limit ends the stream after that many
            # messages (finite reads for tests and curl)
            sub = state.bus.subscribe()
            sent = 0
            idle = 0.0
            try:
                while limit is None or sent < limit:
                    try:
                        message = sub.get_nowait()
                    except queue.Empty:
                        await anyio.sleep(0.02)
                        idle += 0.02
                        if idle >= 15.0:
                            idle = 0.0
                            yield ": keepalive\n\n"
                        continue
                    idle = 0.0
                    sent += 1
                    payload = json.dumps(message["data"], ensure_ascii=False)
                    yield f"event: {message['event']}\ndata: {payload}\n\n"
            finally:
                state.bus.unsubscribe(sub)

        return StreamingResponse(stream(), media_type="text/event-stream")

    return app
