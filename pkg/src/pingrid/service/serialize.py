"""JSON shapes for cards, plans, artifacts, and sliders on the HTTP surface
and in the session log."""

from __future__ import annotations

from ..core import (
    HistoryCard,
    InstructionBundle,
    ScriptArtifact,
    ScriptCategory,
    SegmentPlan,
    SliderSpec,
)


def plan_to_json(plan: SegmentPlan) -> dict:
    return {
        "isFollowup": plan.is_followup,
        "primitive": plan.primitive,
        "animation": plan.animation,
        "interaction": plan.interaction,
    }


def plan_from_json(data: dict) -> SegmentPlan:
    return SegmentPlan(
        is_followup=bool(data["isFollowup"]),
        primitive=data.get("primitive"),
        animation=data.get("animation"),
        interaction=data.get("interaction"),
    )


def bundle_to_json(bundle: InstructionBundle) -> dict:
    return {
        "primitive": bundle.primitive,
        "animation": bundle.animation,
        "interaction": bundle.interaction,
    }


def bundle_from_json(data: dict) -> InstructionBundle:
    return InstructionBundle(
        primitive=data.get("primitive"),
        animation=data.get("animation"),
        interaction=data.get("interaction"),
    )


def artifact_to_json(artifact: ScriptArtifact) -> dict:
    return {
        "category": artifact.category.value,
        "message": artifact.message,
        "source": artifact.source,
        "parameters": dict(artifact.parameters),
        "explanation": artifact.explanation,
        "originPrompt": artifact.origin_prompt,
    }


def artifact_from_json(data: dict) -> ScriptArtifact:
    return ScriptArtifact(
        category=ScriptCategory(data["category"]),
        message=data["message"],
        source=data["source"],
        parameters={k: float(v) for k, v in data.get("parameters", {}).items()},
        explanation=data.get("explanation"),
        origin_prompt=data.get("originPrompt", ""),
    )


def card_to_json(card: HistoryCard) -> dict:
    return {
        "id": card.id,
        "parentId": card.parent_id,
        "userInput": card.user_input,
        "plan": plan_to_json(card.plan),
        "instructions": bundle_to_json(card.instructions),
        "artifacts": [artifact_to_json(a) for a in card.artifacts],
        "enabled": {str(k): v for k, v in card.enabled.items()},
        "createdAt": card.created_at,
    }


def card_from_json(data: dict) -> HistoryCard:
    return HistoryCard(
        id=data["id"],
        parent_id=data.get("parentId"),
        user_input=data["userInput"],
        plan=plan_from_json(data["plan"]),
        instructions=bundle_from_json(data["instructions"]),
        artifacts=[artifact_from_json(a) for a in data["artifacts"]],
        enabled={int(k): bool(v) for k, v in data["enabled"].items()},
        created_at=float(data["createdAt"]),
    )


def slider_to_json(slider: SliderSpec) -> dict:
    return {
        "name": slider.name,
        "initial": slider.initial,
        "min": slider.min,
        "max": slider.max,
    }
