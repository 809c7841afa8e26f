"""Append-only JSON-lines session log.

Scenes are never serialized: determinism plus the replay-mode gateway make
them derivable, so replaying a log's prompts through a fresh manager must
reproduce the same cards.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path


@dataclass
class SessionLog:
    directory: Path
    session_id: str

    def __post_init__(self) -> None:
        self.directory = Path(self.directory)

    @property
    def path(self) -> Path:
        return self.directory / f"{self.session_id}.jsonl"

    def append(self, event: dict) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        with self.path.open("a") as handle:
            handle.write(json.dumps(event, ensure_ascii=False) + "\n")

    def events(self) -> list[dict]:
        if not self.path.exists():
            return []
        return [json.loads(line) for line in self.path.read_text().splitlines() if line.strip()]


def replay_log(log: SessionLog, manager) -> list[dict]:
    """Re-run every prompt in the log through a fresh session; returns the
    replayed cards in wire form for comparison against the logged ones."""
    from .serialize import card_to_json

    state = manager.create_session()
    replayed: list[dict] = []
    for event in log.events():
        if event.get("type") == "prompt":
            card = manager.submit_prompt(state.id, event["text"])
            replayed.append(card_to_json(card))
    return replayed


def logged_cards(log: SessionLog) -> list[dict]:
    return [event["card"] for event in log.events() if event.get("type") == "card"]
