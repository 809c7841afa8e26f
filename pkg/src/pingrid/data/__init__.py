"""Bundled data files: example-collection seeds and the evaluation corpus."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path


def seed_records(category: str) -> list[dict]:
    """Seed rows for one category: {id, category, instruction, code, tier}."""
    path = resources.files(__package__) / "seeds" / f"{category}.json"
    return json.loads(path.read_text())


def all_seed_records() -> list[dict]:
    rows: list[dict] = []
    for category in ("primitive", "animation", "interaction"):
        rows.extend(seed_records(category))
    return rows


def canonical_trio() -> dict[str, dict]:
    """The fixed reference example per category (tier 'canonical')."""
    out: dict[str, dict] = {}
    for category in ("primitive", "animation", "interaction"):
        for row in seed_records(category):
            if row["tier"] == "canonical":
                out[category] = row
                break
    return out


def corpus_path() -> Path:
    return Path(str(resources.files(__package__) / "corpus" / "eval_prompts.txt"))
