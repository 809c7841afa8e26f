"""Structured-output parsing for generator responses.

Model output must carry the mandatory {type, message, content} triple; the
parser tolerates code fences and prose around the JSON object, and maps the
optional richer fields (explanation, parameters, user input) onto the
artifact when present. Anything else is a structured-output error that
retains the raw text for the error console.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..core import ScriptCategory
from ..errors import PingridError

CATEGORY_LABELS = {c.value: c for c in ScriptCategory}


class StructuredOutputError(PingridError):
    def __init__(self, message: str, raw: str):
        super().__init__(message)
        self.raw = raw


@dataclass(frozen=True)
class StructuredOutput:
    category: ScriptCategory
    message: str
    source: str
    explanation: str | None = None
    extras: dict = field(default_factory=dict)


def extract_json_object(raw: str) -> str | None:
    """The first balanced top-level {...} in the text, string-aware."""
    start = raw.find("{")
    while start != -1:
        depth = 0
        in_string = False
        escape = False
        for idx in range(start, len(raw)):
            ch = raw[idx]
            if in_string:
                if escape:
                    escape = False
                elif ch == "\\":
                    escape = True
                elif ch == '"':
                    in_string = False
                continue
            if ch == '"':
                in_string = True
            elif ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
                if depth == 0:
                    return raw[start : idx + 1]
        start = raw.find("{", start + 1)
    return None


def strip_code_fences(raw: str) -> str:
    text = raw.strip()
    if text.startswith("```"):
        first_newline = text.find("\n")
        if first_newline != -1:
            text = text[first_newline + 1 :]
        if text.rstrip().endswith("```"):
            text = text.rstrip()[:-3]
    return text


def parse_structured_output(raw: str) -> StructuredOutput:
    candidate = extract_json_object(strip_code_fences(raw))
    if candidate is None:
        raise StructuredOutputError("no JSON object found in model output", raw)
    try:
        data = json.loads(candidate)
    except json.JSONDecodeError as exc:
        raise StructuredOutputError(f"model output is not valid JSON: {exc}", raw) from None
    if not isinstance(data, dict):
        raise StructuredOutputError("model output JSON is not an object", raw)

    missing = [key for key in ("type", "message", "content") if key not in data]
    if missing:
        raise StructuredOutputError(f"model output missing required fields: {missing}", raw)

    label = str(data["type"]).strip().lower()
    if label not in CATEGORY_LABELS:
        raise StructuredOutputError(f"unknown script type {data['type']!r}", raw)
    source = data["content"]
    if not isinstance(source, str) or not source.strip():
        raise StructuredOutputError("content field must be a non-empty script", raw)

    explanation = data.get("explanation")
    extras = {
        key: value
        for key, value in data.items()
        if key not in ("type", "message", "content", "explanation")
    }
    return StructuredOutput(
        category=CATEGORY_LABELS[label],
        message=str(data["message"]),
        source=source,
        explanation=str(explanation) if isinstance(explanation, str) else None,
        extras=extras,
    )
