"""Test doubles for the gateway transport."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Callable

_DATA_DIR = Path(__file__).parent / "data"


def heart_script(name: str) -> str:
    return (_DATA_DIR / f"heart_{name}.js").read_text()

HEART_SEGMENTS = {
    "primitive": "Create a heart shape on the display",
    "animation": "Implement a pulsing animation to simulate the heart beating",
    "interaction": (
        "Create two buttons, one to move the heart shape to the left and "
        "another to move it to the right across the display"
    ),
}

HEART_INSTRUCTIONS = {
    "primitive": (
        "Create a heart shape on the display by setting its initial position "
        "with [heartPositionX] and [heartPositionY], scaling it with "
        "[heartScale], and establishing its height with [heartHeight] for "
        "the 2.5D effect."
    ),
    "animation": (
        "Implement a pulsing animation to simulate the heart beating by "
        "periodically changing [heartScale]"
    ),
    "interaction": (
        "Create two buttons: one that decreases [heartPositionX] to move the "
        "heart shape to the left, and another that increases [heartPositionX] "
        "to move it to the right across the display."
    ),
}

HEART_PARAMS = ["heartPositionX", "heartPositionY", "heartScale", "heartHeight"]


def chain_kind(messages: list[dict]) -> str:
    """Which helper chain or generator agent a request belongs to, judged by
    distinctive phrases in the system prompt."""
    system = messages[0]["content"]
    if "segment prompt into three seperate segments" in system:
        return "segmentation"
    if "analyze and generate parameters" in system:
        return "parameter_generation"
    if "evaluating whether a user-described animation" in system:
        return "parameter_inference"
    if "come up with code instructions" in system:
        return "code_instruction"
    if "Animation Script Generator" in system:
        return "animation_agent"
    if "write interaction scripts" in system:
        return "interaction_agent"
    return "primitive_agent"


class ChainResponder:
    """Scripted per-chain responses; chains not overridden raise."""

    def __init__(self, handlers: dict[str, Callable[[list[dict]], str]]):
        self.handlers = handlers
        self.calls: list[str] = []

    def __call__(self, model: str, messages: list[dict]) -> str:
        kind = chain_kind(messages)
        self.calls.append(kind)
        if kind not in self.handlers:
            raise AssertionError(f"no scripted response for chain {kind}")
        return self.handlers[kind](messages)


def heart_chain_handlers() -> dict[str, Callable[[list[dict]], str]]:
    """Chain responses reproducing the heart walkthrough."""

    def segmentation(messages: list[dict]) -> str:
        user = json.loads(messages[-1]["content"])
        followup = "rotate" in user["user_input"]
        if followup:
            return json.dumps(
                {
                    "is_followup": True,
                    "Authoring Primitive Shape/Motion": HEART_SEGMENTS["primitive"],
                    "Authoring Animation": HEART_SEGMENTS["animation"],
                    "Authoring Interaction": (
                        "Create two buttons that rotate the heart shape when clicked"
                    ),
                }
            )
        return json.dumps(
            {
                "is_followup": False,
                "Authoring Primitive Shape/Motion": HEART_SEGMENTS["primitive"],
                "Authoring Animation": HEART_SEGMENTS["animation"],
                "Authoring Interaction": HEART_SEGMENTS["interaction"],
            }
        )

    def parameters(messages: list[dict]) -> str:
        return json.dumps({"parameters": HEART_PARAMS})

    def inference(messages: list[dict]) -> str:
        return json.dumps({"success": True, "message": "positionX realizes horizontal movement"})

    def instruction(messages: list[dict]) -> str:
        return json.dumps(
            {
                "Authoring Primitive Shape/Motion": HEART_INSTRUCTIONS["primitive"],
                "Authoring Animation": HEART_INSTRUCTIONS["animation"],
                "Authoring Interaction": HEART_INSTRUCTIONS["interaction"],
            }
        )

    return {
        "segmentation": segmentation,
        "parameter_generation": parameters,
        "parameter_inference": inference,
        "code_instruction": instruction,
    }


def heart_pipeline_handlers(bad_first_primitive: bool = False) -> dict:
    """Full pipeline responses: helper chains plus the three generator
    agents, covering the first heart prompt and the rotate follow-up.

    With bad_first_primitive, the primitive agent answers the initial
    request with a syntactically broken script and only produces the good
    one once the request carries a compile error (the regeneration path).
    """
    handlers = heart_chain_handlers()

    def inference(messages: list[dict]) -> str:
        payload = json.loads(messages[-1]["content"])
        wants_rotation = "rotate" in payload["prompt"].lower()
        if wants_rotation and "heartRotation" not in payload["parentparam"]:
            return json.dumps(
                {
                    "success": False,
                    "message": "rotation needs a dedicated parameter",
                    "updatedParams": ["heartRotation"],
                }
            )
        return json.dumps({"success": True, "message": "parameters cover the auxiliary segments"})

    def instruction(messages: list[dict]) -> str:
        payload = json.loads(messages[-1]["content"])
        if "heartRotation" in payload["parameters"]:
            return json.dumps(
                {
                    "Authoring Primitive Shape/Motion": (
                        "Create a heart shape positioned with [heartPositionX] and "
                        "[heartPositionY], scaled with [heartScale], raised to "
                        "[heartHeight], and rotated by [heartRotation]."
                    ),
                    "Authoring Animation": HEART_INSTRUCTIONS["animation"],
                    "Authoring Interaction": (
                        "Create two buttons: one that increases [heartRotation] to "
                        "rotate the heart and another that decreases [heartRotation]."
                    ),
                }
            )
        return json.dumps(
            {
                "Authoring Primitive Shape/Motion": HEART_INSTRUCTIONS["primitive"],
                "Authoring Animation": HEART_INSTRUCTIONS["animation"],
                "Authoring Interaction": HEART_INSTRUCTIONS["interaction"],
            }
        )

    handlers["parameter_inference"] = inference
    handlers["code_instruction"] = instruction

    def primitive_agent(messages: list[dict]) -> str:
        final = messages[-1]["content"]
        if bad_first_primitive and "compile error" not in final:
            return json.dumps(
                {
                    "type": "primitive",
                    "message": "Created a heart shape (draft)",
                    "content": "function initializeParams( { return oops; }",
                }
            )
        rotating = "heartRotation" in final
        return json.dumps(
            {
                "type": "primitive",
                "message": "Created a heart shape",
                "content": heart_script("primitive_rotating" if rotating else "primitive"),
            }
        )

    def animation_agent(messages: list[dict]) -> str:
        return json.dumps(
            {
                "type": "animation",
                "message": "Added a pulsing animation",
                "content": heart_script("animation"),
            }
        )

    def interaction_agent(messages: list[dict]) -> str:
        final = messages[-1]["content"]
        rotating = "heartRotation" in final
        return json.dumps(
            {
                "type": "interaction",
                "message": "Created two control buttons",
                "content": heart_script("rotate_interaction" if rotating else "interaction"),
            }
        )

    handlers["primitive_agent"] = primitive_agent
    handlers["animation_agent"] = animation_agent
    handlers["interaction_agent"] = interaction_agent
    return handlers


class ScriptedTransport:
    """Chat responses come from a rule callable (model, messages) -> str."""

    def __init__(self, responder: Callable[[str, list[dict]], str]):
        self.responder = responder
        self.chat_calls = 0
        self.embed_calls = 0

    def chat(self, model: str, messages: list[dict], temperature: float) -> str:
        self.chat_calls += 1
        return self.responder(model, messages)

    def embed(self, model: str, text: str) -> list[float]:
        self.embed_calls += 1
        # deterministic placeholder vector, distinct per text length
        return [float(len(text) % 7), 1.0, 0.0, 0.0]


class ForbiddenTransport:
    """Any call is a test failure: replay mode must never reach the network."""

    def __init__(self):
        self.calls = 0

    def chat(self, model: str, messages: list[dict], temperature: float) -> str:
        self.calls += 1
        raise AssertionError("transport called in replay mode")

    def embed(self, model: str, text: str) -> list[float]:
        self.calls += 1
        raise AssertionError("transport called in replay mode")


class FlakyTransport:
    """Fails the first n calls, then answers."""

    def __init__(self, failures: int, answer: str = "ok"):
        self.failures = failures
        self.answer = answer
        self.calls = 0

    def chat(self, model: str, messages: list[dict], temperature: float) -> str:
        self.calls += 1
        if self.calls <= self.failures:
            raise ConnectionError(f"simulated outage {self.calls}")
        return self.answer

    def embed(self, model: str, text: str) -> list[float]:
        self.calls += 1
        if self.calls <= self.failures:
            raise ConnectionError(f"simulated outage {self.calls}")
        return [1.0, 0.0]
