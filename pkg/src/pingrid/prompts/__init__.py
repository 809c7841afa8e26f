"""Versioned prompt resources for the helper chains and script generators.

The texts ship verbatim as resource files; tests pin their SHA-256 hashes so
silent prompt drift fails loudly.
"""

from __future__ import annotations

import hashlib
from functools import lru_cache
from importlib import resources

HELPER_PROMPTS = (
    "segmentation",
    "parameter_generation",
    "parameter_inference",
    "code_instruction",
)

AGENT_PROMPTS = (
    "primitive_agent",
    "animation_agent",
    "interaction_agent",
)

ALL_PROMPTS = HELPER_PROMPTS + AGENT_PROMPTS


@lru_cache(maxsize=None)
def prompt_text(name: str) -> str:
    if name not in ALL_PROMPTS:
        raise KeyError(f"unknown prompt resource {name!r}")
    path = resources.files(__package__) / "resources" / f"{name}.txt"
    return path.read_text()


def prompt_hash(name: str) -> str:
    return hashlib.sha256(prompt_text(name).encode("utf-8")).hexdigest()
