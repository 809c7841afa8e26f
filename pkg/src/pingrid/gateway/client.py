"""Provider-agnostic chat + embedding client with live/record/replay modes.

Replay mode answers every request from the fixture store and never touches
the transport; record mode calls the transport and persists each response
under its content-addressed key. The transport itself is injectable, so
tests can count (and forbid) network activity.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Protocol

from ..errors import PingridError, ValidationError
from .fallback import FALLBACK_DIM, FALLBACK_MODEL, hash_embed
from .fixtures import FixtureStore, ReplayMissError, fixture_key

VALID_ROLES = ("system", "user", "assistant")
VALID_MODES = ("live", "record", "replay")


class GatewayError(PingridError):
    def __init__(self, message: str, retries: int = 0):
        super().__init__(f"{message} (after {retries} retries)" if retries else message)
        self.retries = retries


@dataclass(frozen=True)
class ChatMessage:
    role: str
    content: str

    def __post_init__(self) -> None:
        if self.role not in VALID_ROLES:
            raise ValidationError(f"message role must be one of {VALID_ROLES}, got {self.role!r}")
        if not self.content:
            raise ValidationError("message content must be non-empty")

    def as_dict(self) -> dict:
        return {"role": self.role, "content": self.content}


@dataclass(frozen=True)
class ModelConfig:
    helper_model: str = "gpt-4-turbo-preview"
    generator_model: str = "gpt-3.5-turbo-0125"
    embedding_model: str = FALLBACK_MODEL
    mode: str = "replay"
    fixture_dir: Path | None = None
    embedding_dim: int = FALLBACK_DIM
    base_url: str = "https://api.openai.com/v1"
    api_key_env: str = "PINGRID_API_KEY"
    max_retries: int = 2
    temperature: float = 0.0

    def __post_init__(self) -> None:
        if self.mode not in VALID_MODES:
            raise ValidationError(f"mode must be one of {VALID_MODES}, got {self.mode!r}")
        if self.mode == "replay" and self.fixture_dir is None:
            raise ValidationError("replay mode requires a fixture_dir")

    @staticmethod
    def from_env(env: dict[str, str] | None = None) -> "ModelConfig":
        env = dict(os.environ) if env is None else env
        fixture_dir = env.get("PINGRID_FIXTURES")
        return ModelConfig(
            helper_model=env.get("PINGRID_HELPER_MODEL", "gpt-4-turbo-preview"),
            generator_model=env.get("PINGRID_GENERATOR_MODEL", "gpt-3.5-turbo-0125"),
            embedding_model=env.get("PINGRID_EMBEDDING_MODEL", FALLBACK_MODEL),
            mode=env.get("PINGRID_MODE", "replay" if fixture_dir else "live"),
            fixture_dir=Path(fixture_dir) if fixture_dir else None,
            base_url=env.get("PINGRID_BASE_URL", "https://api.openai.com/v1"),
        )


class Transport(Protocol):
    """Live-mode provider calls. Implementations must be thread-safe."""

    def chat(self, model: str, messages: list[dict], temperature: float) -> str: ...

    def embed(self, model: str, text: str) -> list[float]: ...


class HttpTransport:
    """OpenAI-style chat-completions + embeddings over HTTP."""

    def __init__(self, base_url: str, api_key: str, timeout: float = 120.0):
        import httpx

        self._client = httpx.Client(
            base_url=base_url.rstrip("/"),
            headers={"Authorization": f"Bearer {api_key}"},
            timeout=timeout,
        )

    def chat(self, model: str, messages: list[dict], temperature: float) -> str:
        response = self._client.post(
            "/chat/completions",
            json={"model": model, "messages": messages, "temperature": temperature},
        )
        response.raise_for_status()
        return response.json()["choices"][0]["message"]["content"]

    def embed(self, model: str, text: str) -> list[float]:
        response = self._client.post("/embeddings", json={"model": model, "input": text})
        response.raise_for_status()
        return response.json()["data"][0]["embedding"]


@dataclass
class LlmGateway:
    config: ModelConfig
    transport: Transport | None = None
    sleep: Callable[[float], None] = time.sleep
    call_log: list[dict] = field(default_factory=list)

    def __post_init__(self) -> None:
        self._store = FixtureStore(self.config.fixture_dir) if self.config.fixture_dir else None
        if self.config.mode in ("live", "record") and self.transport is None:
            api_key = os.environ.get(self.config.api_key_env, "")
            self.transport = HttpTransport(self.config.base_url, api_key)

    # ---- chat ----

    def complete(self, model: str, messages: list[ChatMessage]) -> str:
        if not messages:
            raise ValidationError("complete() requires at least one message")
        wire = [m.as_dict() for m in messages]
        key = fixture_key(model, wire, kind="chat")
        started = time.perf_counter()
        if self.config.mode == "replay":
            assert self._store is not None
            record = self._store.load(key)
            if record is None:
                raise ReplayMissError(key, model)
            response = record["response"]
        else:
            response = self._call_with_retries(lambda: self.transport.chat(model, wire, self.config.temperature))
            if self.config.mode == "record":
                assert self._store is not None, "record mode requires a fixture_dir"
                self._store.save(key, model, wire, response, kind="chat")
        self.call_log.append(
            {"kind": "chat", "model": model, "key": key, "seconds": time.perf_counter() - started}
        )
        return response

    # ---- embeddings ----

    def embed(self, model: str, text: str) -> list[float]:
        if not text:
            raise ValidationError("embed() requires non-empty text")
        if model == FALLBACK_MODEL:
            return hash_embed(text, self.config.embedding_dim)
        wire = [{"role": "user", "content": text}]
        key = fixture_key(model, wire, kind="embed")
        started = time.perf_counter()
        if self.config.mode == "replay":
            assert self._store is not None
            record = self._store.load(key)
            if record is None:
                raise ReplayMissError(key, model)
            vector = [float(v) for v in record["response"]]
        else:
            vector = self._call_with_retries(lambda: self.transport.embed(model, text))
            if self.config.mode == "record":
                assert self._store is not None, "record mode requires a fixture_dir"
                self._store.save(key, model, wire, vector, kind="embed")
        self.call_log.append(
            {"kind": "embed", "model": model, "key": key, "seconds": time.perf_counter() - started}
        )
        return vector

    def _call_with_retries(self, call: Callable):
        if self.transport is None:
            raise GatewayError("no transport configured for live mode")
        attempts = self.config.max_retries + 1
        delay = 0.5
        last: Exception | None = None
        for attempt in range(attempts):
            try:
                return call()
            except Exception as exc:  # transport failures only
                last = exc
                if attempt + 1 < attempts:
                    self.sleep(delay)
                    delay *= 2
        raise GatewayError(f"transport failed: {last}", retries=self.config.max_retries)
