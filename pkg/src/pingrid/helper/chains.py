"""The four-sub-chain helper pipeline: segmentation, parameter generation,
parameter validation, and code-instruction synthesis.

Every chain output is either a schema-valid value or a typed SchemaError
carrying the raw model text; there are no partial states. A failed
validation adopts the verdict's updatedParams and re-validates, at most
MAX_VALIDATION_ROUNDS times, before giving up.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Callable

from ..core import InstructionBundle, ParameterSet, SegmentPlan, ValidationVerdict
from ..errors import PingridError, ValidationError
from ..gateway import ChatMessage, LlmGateway
from ..generators.outputs import extract_json_object, strip_code_fences
from ..prompts import prompt_text

MAX_VALIDATION_ROUNDS = 2

SEGMENT_PRIMITIVE = "Authoring Primitive Shape/Motion"
SEGMENT_ANIMATION = "Authoring Animation"
SEGMENT_INTERACTION = "Authoring Interaction"

FeedbackFn = Callable[[str, str], None]


class SchemaError(PingridError):
    """Chain output failed to parse into its contract; raw text retained."""

    def __init__(self, message: str, raw: str):
        super().__init__(message)
        self.raw = raw


class ValidationExhaustedError(PingridError):
    def __init__(self, rounds: int):
        super().__init__(f"parameter validation still failing after {rounds} adjustment rounds")
        self.rounds = rounds


@dataclass(frozen=True)
class HelperContext:
    """Long-term memory: prior (user input, instruction bundle) turns,
    oldest first."""

    prior_turns: tuple[tuple[str, InstructionBundle], ...] = ()

    @staticmethod
    def from_session(session) -> "HelperContext":
        return HelperContext(prior_turns=tuple(session.helper_memory))


def _chain_json(raw: str) -> dict:
    candidate = extract_json_object(strip_code_fences(raw))
    if candidate is None:
        raise SchemaError("no JSON object in chain output", raw)
    try:
        data = json.loads(candidate)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"chain output is not valid JSON: {exc}", raw) from None
    if not isinstance(data, dict):
        raise SchemaError("chain output JSON is not an object", raw)
    return data


def _segment_value(value: object) -> str | None:
    if value is None:
        return None
    text = str(value).strip()
    if not text or text.lower() == "none" or text.lower() == "null":
        return None
    return text


def _as_bool(value: object, raw: str) -> bool:
    if isinstance(value, bool):
        return value
    if isinstance(value, str):
        lowered = value.strip().lower()
        if lowered in ("true", "yes"):
            return True
        if lowered in ("false", "no"):
            return False
    raise SchemaError(f"expected a boolean, got {value!r}", raw)


def _bundle_as_json(bundle: InstructionBundle) -> dict:
    return {
        SEGMENT_PRIMITIVE: bundle.primitive,
        SEGMENT_ANIMATION: bundle.animation,
        SEGMENT_INTERACTION: bundle.interaction,
    }


def _plan_as_json(plan: SegmentPlan) -> dict:
    return {
        SEGMENT_PRIMITIVE: plan.primitive,
        SEGMENT_ANIMATION: plan.animation,
        SEGMENT_INTERACTION: plan.interaction,
    }


@dataclass
class PromptHelper:
    gateway: LlmGateway

    @property
    def _model(self) -> str:
        return self.gateway.config.helper_model

    def _complete(self, prompt_name: str, payload: dict) -> str:
        messages = [
            ChatMessage(role="system", content=prompt_text(prompt_name)),
            ChatMessage(role="user", content=json.dumps(payload, ensure_ascii=False)),
        ]
        return self.gateway.complete(self._model, messages)

    # ---- chain 1: segmentation ----

    def segment(self, user_input: str, ctx: HelperContext) -> SegmentPlan:
        if not user_input:
            raise ValidationError("user input must be non-empty")
        payload = {
            "user_input": user_input,
            "prior_turns": [
                {"input": text, "instructions": _bundle_as_json(bundle)}
                for text, bundle in ctx.prior_turns
            ],
        }
        raw = self._complete("segmentation", payload)
        data = _chain_json(raw)
        if "is_followup" not in data:
            raise SchemaError("segmentation output missing is_followup", raw)
        if SEGMENT_PRIMITIVE not in data:
            raise SchemaError(f"segmentation output missing {SEGMENT_PRIMITIVE!r}", raw)
        is_followup = _as_bool(data["is_followup"], raw)
        primitive = _segment_value(data.get(SEGMENT_PRIMITIVE))
        if primitive is None and not is_followup:
            raise SchemaError("non-follow-up segmentation produced no primitive segment", raw)
        return SegmentPlan(
            is_followup=is_followup,
            primitive=primitive,
            animation=_segment_value(data.get(SEGMENT_ANIMATION)),
            interaction=_segment_value(data.get(SEGMENT_INTERACTION)),
        )

    # ---- chain 2: parameter generation ----

    def generate_parameters(self, plan: SegmentPlan) -> ParameterSet:
        if plan.primitive is None:
            raise ValidationError("parameter generation needs a primitive segment")
        raw = self._complete("parameter_generation", _plan_as_json(plan))
        data = _chain_json(raw)
        value = data.get("parameters")
        if isinstance(value, str):
            # the chain may answer with a stringified JSON list
            try:
                value = json.loads(value)
            except json.JSONDecodeError:
                value = [part.strip() for part in value.split(",") if part.strip()]
        if not isinstance(value, list):
            raise SchemaError("parameter output must carry a 'parameters' list", raw)
        names = [str(item) for item in value]
        if not names:
            raise ValidationError("parameter chain produced an empty list")
        try:
            return ParameterSet(names=tuple(names))
        except ValidationError as exc:
            raise SchemaError(f"bad parameter list: {exc}", raw) from None

    # ---- chain 3: parameter validation ----

    def validate_parameters(self, params: ParameterSet, plan: SegmentPlan) -> ValidationVerdict:
        if not params.names:
            raise ValidationError("cannot validate an empty parameter set")
        if plan.animation is None and plan.interaction is None:
            return ValidationVerdict(success=True, message="no auxiliary segments to accommodate")
        prompt_parts = [text for text in (plan.animation, plan.interaction) if text]
        payload = {"parentparam": list(params.names), "prompt": " ".join(prompt_parts)}
        raw = self._complete("parameter_inference", payload)
        data = _chain_json(raw)
        if "success" not in data:
            raise SchemaError("validation output missing success", raw)
        success = _as_bool(data["success"], raw)
        message = str(data.get("message", ""))
        if success:
            return ValidationVerdict(success=True, message=message)
        updated = data.get("updatedParams")
        if not isinstance(updated, list) or not updated:
            raise SchemaError("failed validation must supply updatedParams", raw)
        try:
            additions = ParameterSet(
                names=tuple(dict.fromkeys(str(item) for item in updated))
            )
        except ValidationError as exc:
            raise SchemaError(f"bad updatedParams: {exc}", raw) from None
        return ValidationVerdict(
            success=False, message=message, updated_params=params.union(additions)
        )

    # ---- chain 4: code instructions ----

    def build_instructions(self, plan: SegmentPlan, params: ParameterSet) -> InstructionBundle:
        payload = _plan_as_json(plan)
        payload["parameters"] = list(params.names)
        raw = self._complete("code_instruction", payload)
        data = _chain_json(raw)
        primitive = _segment_value(data.get(SEGMENT_PRIMITIVE))
        animation = _segment_value(data.get(SEGMENT_ANIMATION))
        interaction = _segment_value(data.get(SEGMENT_INTERACTION))
        # None plan segments yield None instructions regardless of the model
        bundle = InstructionBundle(
            primitive=primitive if plan.primitive is not None else None,
            animation=animation if plan.animation is not None else None,
            interaction=interaction if plan.interaction is not None else None,
        )
        for segment_name, plan_text, instruction in (
            ("primitive", plan.primitive, bundle.primitive),
            ("animation", plan.animation, bundle.animation),
            ("interaction", plan.interaction, bundle.interaction),
        ):
            if plan_text is not None and instruction is None:
                raise SchemaError(f"instruction output dropped the {segment_name} segment", raw)
        uncovered = set(params.names) - bundle.bracketed_names()
        if uncovered:
            raise SchemaError(
                f"instructions do not reference parameters {sorted(uncovered)} in brackets", raw
            )
        return bundle

    # ---- the whole pipeline ----

    def run(
        self,
        user_input: str,
        ctx: HelperContext,
        feedback: FeedbackFn | None = None,
    ) -> tuple[SegmentPlan, ParameterSet, InstructionBundle]:
        emit = feedback or (lambda phase, detail: None)
        plan = self.segment(user_input, ctx)
        emit("segmented", _describe_plan(plan))
        params = self.generate_parameters(plan)
        emit("parameters", ", ".join(params.names))
        verdict = self.validate_parameters(params, plan)
        rounds = 0
        while not verdict.success:
            rounds += 1
            if rounds > MAX_VALIDATION_ROUNDS:
                raise ValidationExhaustedError(MAX_VALIDATION_ROUNDS)
            assert verdict.updated_params is not None
            params = verdict.updated_params
            verdict = self.validate_parameters(params, plan)
        emit("validated", verdict.message)
        bundle = self.build_instructions(plan, params)
        emit("instructed", _describe_bundle(bundle))
        return plan, params, bundle


def _describe_plan(plan: SegmentPlan) -> str:
    parts = []
    for name, text in (
        ("primitive", plan.primitive),
        ("animation", plan.animation),
        ("interaction", plan.interaction),
    ):
        if text:
            parts.append(f"{name}: {text}")
    prefix = "follow-up; " if plan.is_followup else ""
    return prefix + " | ".join(parts)


def _describe_bundle(bundle: InstructionBundle) -> str:
    present = [
        name
        for name, text in (
            ("primitive", bundle.primitive),
            ("animation", bundle.animation),
            ("interaction", bundle.interaction),
        )
        if text
    ]
    return "instructions for " + ", ".join(present)
