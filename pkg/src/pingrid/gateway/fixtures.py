"""Content-addressed fixture store for record/replay of model calls.

A fixture key is the SHA-256 of the model id plus the canonical JSON of the
message list, so replay survives reordering of unrelated fixtures and any
re-serialization of the same request. One JSON file per key.
"""

from __future__ import annotations

import hashlib
import json
import threading
from dataclasses import dataclass
from pathlib import Path

from ..errors import PingridError


class ReplayMissError(PingridError):
    """No fixture recorded for this request key."""

    def __init__(self, key: str, model: str):
        super().__init__(f"no fixture for key {key} (model {model})")
        self.key = key
        self.model = model


def canonical_request(model: str, messages: list[dict], kind: str = "chat") -> str:
    payload = {
        "kind": kind,
        "model": model,
        "messages": [{"role": m["role"], "content": m["content"]} for m in messages],
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def fixture_key(model: str, messages: list[dict], kind: str = "chat") -> str:
    return hashlib.sha256(canonical_request(model, messages, kind).encode("utf-8")).hexdigest()


@dataclass
class FixtureStore:
    root: Path

    def __post_init__(self) -> None:
        self.root = Path(self.root)
        self._lock = threading.Lock()

    def _path(self, key: str) -> Path:
        return self.root / f"{key}.json"

    def load(self, key: str) -> dict | None:
        path = self._path(key)
        if not path.exists():
            return None
        return json.loads(path.read_text())

    def save(self, key: str, model: str, messages: list[dict], response: object, kind: str = "chat") -> None:
        record = {
            "key": key,
            "kind": kind,
            "model": model,
            "messages": messages,
            "response": response,
        }
        with self._lock:
            self.root.mkdir(parents=True, exist_ok=True)
            self._path(key).write_text(json.dumps(record, indent=2, ensure_ascii=False) + "\n")

    def keys(self) -> list[str]:
        if not self.root.exists():
            return []
        return sorted(p.stem for p in self.root.glob("*.json"))
