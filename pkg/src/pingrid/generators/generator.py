"""Category-specialized script generation.

Each call assembles: the category's rule prompt, the top-3 retrieved
instruction/code pairs as few-shot turns, and one final user payload carrying
the instruction (plus parent parameters, the single short-term-memory script,
and a compile error when regenerating). The response is parsed as structured
output and the artifact's parameter map is recovered by evaluating its
initializer in the sandbox, never by trusting a JSON field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from ..core import ScriptArtifact, ScriptCategory, Session
from ..errors import InvalidStateError, PingridError, ValidationError
from ..gateway import ChatMessage, LlmGateway
from ..prompts import prompt_text
from ..rag import ExampleStore
from ..runtime import CompileError, extract_parameters
from .outputs import parse_structured_output

_AGENT_PROMPT = {
    ScriptCategory.PRIMITIVE: "primitive_agent",
    ScriptCategory.ANIMATION: "animation_agent",
    ScriptCategory.INTERACTION: "interaction_agent",
}

RETRIEVAL_K = 3


class CategoryMismatchError(PingridError):
    def __init__(self, wanted: ScriptCategory, got: ScriptCategory):
        super().__init__(f"generator for {wanted.value} returned a {got.value} script")
        self.wanted = wanted
        self.got = got


@dataclass(frozen=True)
class GeneratorRequest:
    category: ScriptCategory
    instruction: str
    parent_params: dict[str, float] | None = None
    short_term_memory: str | None = None
    compile_error: str | None = None

    def __post_init__(self) -> None:
        if not self.instruction:
            raise ValidationError("generator request needs a non-empty instruction")
        if self.category in (ScriptCategory.ANIMATION, ScriptCategory.INTERACTION) and self.parent_params is None:
            raise ValidationError(f"{self.category.value} requests require parent_params")
        if self.compile_error is not None and self.short_term_memory is None:
            raise ValidationError("compile_error only makes sense with short_term_memory present")


def _example_input(category: ScriptCategory, instruction: str) -> str:
    if category is ScriptCategory.PRIMITIVE:
        return json.dumps({"Prompt": instruction}, ensure_ascii=False)
    return json.dumps({"Prompt": instruction, "parentparams": "(from the existing primitive)"}, ensure_ascii=False)


def _example_output(category: ScriptCategory, instruction: str, code: str) -> str:
    return json.dumps(
        {"type": category.value, "message": instruction, "content": code}, ensure_ascii=False
    )


def build_messages(req: GeneratorRequest, store: ExampleStore) -> list[ChatMessage]:
    messages = [ChatMessage(role="system", content=prompt_text(_AGENT_PROMPT[req.category]))]
    for record in store.top_k(req.category, req.instruction, k=RETRIEVAL_K):
        messages.append(ChatMessage(role="user", content=_example_input(req.category, record.instruction)))
        messages.append(ChatMessage(role="assistant", content=_example_output(record.category, record.instruction, record.code)))

    payload: dict = {"Prompt": req.instruction}
    if req.parent_params is not None:
        payload["parentparams"] = req.parent_params
    parts = [json.dumps(payload, ensure_ascii=False)]
    if req.short_term_memory is not None:
        parts.append("Your previously generated script for this element:\n" + req.short_term_memory)
    if req.compile_error is not None:
        parts.append(
            "The previous script failed to load with this compile error; "
            "regenerate a corrected script:\n" + req.compile_error
        )
    messages.append(ChatMessage(role="user", content="\n\n".join(parts)))
    return messages


@dataclass
class ScriptGenerator:
    gateway: LlmGateway
    store: ExampleStore

    def generate(self, req: GeneratorRequest, session: Session | None = None) -> ScriptArtifact:
        messages = build_messages(req, self.store)
        raw = self.gateway.complete(self.gateway.config.generator_model, messages)
        parsed = parse_structured_output(raw)
        if parsed.category is not req.category:
            raise CategoryMismatchError(req.category, parsed.category)
        try:
            parameters = extract_parameters(parsed.source, parsed.category)
        except CompileError:
            parameters = {}  # broken initializer: compile check will report it
        artifact = ScriptArtifact(
            category=parsed.category,
            message=parsed.message,
            source=parsed.source,
            parameters=parameters,
            explanation=parsed.explanation,
            origin_prompt=req.instruction,
        )
        if session is not None:
            session.generator_memory[req.category] = artifact.source
        return artifact

    def regenerate_on_error(
        self, category: ScriptCategory, compile_error: str, session: Session
    ) -> ScriptArtifact:
        memory = session.generator_memory.get(category)
        if memory is None:
            raise InvalidStateError(f"no previous {category.value} script to regenerate from")
        card = session.active_card
        if card is None:
            raise InvalidStateError("session has no cards")
        instruction = card.instructions.for_category(category) or card.user_input
        parent_params: dict[str, float] | None = None
        if category in (ScriptCategory.ANIMATION, ScriptCategory.INTERACTION):
            primitive = next(
                (a for a in card.artifacts if a.category is ScriptCategory.PRIMITIVE), None
            )
            parent_params = dict(primitive.parameters) if primitive else {}
        req = GeneratorRequest(
            category=category,
            instruction=instruction,
            parent_params=parent_params,
            short_term_memory=memory,
            compile_error=compile_error,
        )
        return self.generate(req, session=session)
