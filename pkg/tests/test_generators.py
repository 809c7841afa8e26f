from __future__ import annotations

import json

import pytest

from pingrid.core import ScriptCategory, Session
from pingrid.data import canonical_trio
from pingrid.errors import InvalidStateError, ValidationError
from pingrid.gateway import LlmGateway, ModelConfig, fixture_key
from pingrid.generators import (
    CategoryMismatchError,
    GeneratorRequest,
    ScriptGenerator,
    StructuredOutputError,
    build_messages,
    parse_structured_output,
)
from pingrid.rag import seeded_store
from pingrid.runtime import compile_check

from .fakes import ScriptedTransport

TRIO = canonical_trio()


class TestParseStructuredOutput:
    def test_exact_schema(self):
        parsed = parse_structured_output('{"type":"primitive","message":"m","content":"c"}')
        assert parsed.category is ScriptCategory.PRIMITIVE
        assert parsed.message == "m"
        assert parsed.source == "c"

    def test_fenced_output_equivalent(self):
        unfenced = '{"type":"animation","message":"m","content":"code"}'
        fenced = f"```json\n{unfenced}\n```"
        assert parse_structured_output(fenced) == parse_structured_output(unfenced)

    def test_prose_around_json_tolerated(self):
        raw = 'Sure! Here is the script:\n{"type":"primitive","message":"m","content":"c"}\nEnjoy!'
        assert parse_structured_output(raw).source == "c"

    def test_unknown_type_rejected(self):
        with pytest.raises(StructuredOutputError):
            parse_structured_output('{"type":"colorize","message":"m","content":"c"}')

    def test_missing_field_rejected_with_raw(self):
        raw = '{"type":"primitive","content":"c"}'
        with pytest.raises(StructuredOutputError) as err:
            parse_structured_output(raw)
        assert err.value.raw == raw

    def test_no_json_rejected(self):
        with pytest.raises(StructuredOutputError):
            parse_structured_output("I cannot help with that.")

    def test_five_field_structure_mapped(self):
        raw = json.dumps(
            {
                "user input": "make a square",
                "parameters": ["a", "b"],
                "type": "primitive",
                "explanation": "why",
                "message": "m",
                "content": "c",
            }
        )
        parsed = parse_structured_output(raw)
        assert parsed.explanation == "why"
        assert parsed.extras["parameters"] == ["a", "b"]

    def test_nested_braces_in_code(self):
        code = "function f() { if (x) { return {a: 1}; } }"
        raw = json.dumps({"type": "primitive", "message": "m", "content": code})
        assert parse_structured_output(raw).source == code


class TestGeneratorRequest:
    def test_animation_requires_parent_params(self):
        with pytest.raises(ValidationError):
            GeneratorRequest(category=ScriptCategory.ANIMATION, instruction="x")

    def test_compile_error_requires_memory(self):
        with pytest.raises(ValidationError):
            GeneratorRequest(
                category=ScriptCategory.PRIMITIVE, instruction="x", compile_error="boom"
            )

    def test_empty_instruction(self):
        with pytest.raises(ValidationError):
            GeneratorRequest(category=ScriptCategory.PRIMITIVE, instruction="")


def respond_with(source_by_category: dict[str, str]):
    def responder(model: str, messages: list[dict]) -> str:
        body = messages[0]["content"]
        if "interaction scripts" in body or "interaction script" in body:
            category = "interaction"
        elif "Animation Script Generator" in body:
            category = "animation"
        else:
            category = "primitive"
        return json.dumps(
            {"type": category, "message": f"made {category}", "content": source_by_category[category]}
        )

    return responder


@pytest.fixture
def generator():
    transport = ScriptedTransport(
        respond_with(
            {
                "primitive": TRIO["primitive"]["code"],
                "animation": TRIO["animation"]["code"],
                "interaction": TRIO["interaction"]["code"],
            }
        )
    )
    gateway = LlmGateway(ModelConfig(mode="live"), transport=transport)
    store = seeded_store(gateway)
    return ScriptGenerator(gateway=gateway, store=store), transport


class TestGenerateScript:
    def test_primitive_square(self, generator):
        gen, _ = generator
        req = GeneratorRequest(
            category=ScriptCategory.PRIMITIVE,
            instruction="Generate a customizable square shape",
        )
        artifact = gen.generate(req)
        assert artifact.category is ScriptCategory.PRIMITIVE
        assert artifact.message == "made primitive"
        assert set(artifact.parameters) == {
            "squareScale",
            "squarePosX",
            "squarePosY",
            "squareRotation",
            "squareHeight",
        }
        compile_check(artifact.source, artifact.category)

    def test_animation_artifact(self, generator):
        gen, _ = generator
        req = GeneratorRequest(
            category=ScriptCategory.ANIMATION,
            instruction="create a left and right repeat animation for the square shape",
            parent_params={"squarePosX": 12.0},
        )
        artifact = gen.generate(req)
        assert artifact.category is ScriptCategory.ANIMATION
        assert "parentparams.squarePosX" in artifact.source
        assert artifact.parameters == {"speed": 2.0}

    def test_interaction_artifact(self, generator):
        gen, _ = generator
        req = GeneratorRequest(
            category=ScriptCategory.INTERACTION,
            instruction="create two buttons that controls left and right movement",
            parent_params={"squarePosX": 12.0},
        )
        artifact = gen.generate(req)
        assert artifact.category is ScriptCategory.INTERACTION
        assert "buttons" in artifact.source
        assert artifact.parameters == {"moveSpeed": 0.1}

    def test_memory_updated_on_success(self, generator):
        gen, _ = generator
        session = Session()
        req = GeneratorRequest(category=ScriptCategory.PRIMITIVE, instruction="square please")
        artifact = gen.generate(req, session=session)
        assert session.generator_memory[ScriptCategory.PRIMITIVE] == artifact.source

    def test_category_mismatch_rejected(self):
        transport = ScriptedTransport(
            lambda m, msgs: json.dumps({"type": "animation", "message": "m", "content": "function initializeParams() { return {}; }"})
        )
        gateway = LlmGateway(ModelConfig(mode="live"), transport=transport)
        gen = ScriptGenerator(gateway=gateway, store=seeded_store(gateway))
        with pytest.raises(CategoryMismatchError):
            gen.generate(GeneratorRequest(category=ScriptCategory.PRIMITIVE, instruction="square"))


class TestPromptAssembly:
    def test_few_shot_examples_present(self, generator):
        gen, _ = generator
        req = GeneratorRequest(
            category=ScriptCategory.PRIMITIVE,
            instruction="Generate a customizable square shape",
        )
        messages = build_messages(req, gen.store)
        assert messages[0].role == "system"
        # 3 retrieved examples -> 3 user/assistant pairs + final user message
        assert len(messages) == 1 + 3 * 2 + 1
        assert messages[-1].role == "user"
        assert "Generate a customizable square shape" in messages[-1].content

    def test_parent_params_serialized(self, generator):
        gen, _ = generator
        req = GeneratorRequest(
            category=ScriptCategory.ANIMATION,
            instruction="bounce it",
            parent_params={"squarePosX": 12.0},
        )
        final = build_messages(req, gen.store)[-1]
        assert json.loads(final.content.split("\n\n")[0])["parentparams"] == {"squarePosX": 12.0}

    def test_token_economy_single_memory_slot(self, generator):
        # the assembled prompt may embed the one memory script, never other
        # previously generated sources
        gen, _ = generator
        old_script = "function oldMarkerAlpha() {}"
        older_script = "function olderMarkerBeta() {}"
        req = GeneratorRequest(
            category=ScriptCategory.PRIMITIVE,
            instruction="square again",
            short_term_memory=old_script,
        )
        blob = "\n".join(m.content for m in build_messages(req, gen.store))
        assert "oldMarkerAlpha" in blob
        assert "olderMarkerBeta" not in blob
        assert blob.count(old_script) == 1


class TestRegeneration:
    def make_session_with_card(self, gen) -> Session:
        from pingrid.core import HistoryCard, InstructionBundle, SegmentPlan, append_card

        session = Session()
        artifact = gen.generate(
            GeneratorRequest(category=ScriptCategory.PRIMITIVE, instruction="square"), session=session
        )
        card = HistoryCard(
            id="card-1",
            parent_id=None,
            user_input="square",
            plan=SegmentPlan(is_followup=False, primitive="square", animation=None, interaction=None),
            instructions=InstructionBundle(primitive="Build a square with [squareScale]", animation=None, interaction=None),
            artifacts=[artifact],
            enabled={0: True},
            created_at=0.0,
        )
        append_card(session, card)
        return session

    def test_regenerate_without_memory_is_invalid_state(self, generator):
        gen, _ = generator
        session = Session()
        with pytest.raises(InvalidStateError):
            gen.regenerate_on_error(ScriptCategory.PRIMITIVE, "boom", session)

    def test_regenerate_updates_memory(self, generator):
        gen, _ = generator
        session = self.make_session_with_card(gen)
        artifact = gen.regenerate_on_error(ScriptCategory.PRIMITIVE, "SyntaxError: x", session)
        assert session.generator_memory[ScriptCategory.PRIMITIVE] == artifact.source

    def test_identical_error_twice_has_distinct_fixture_keys(self, generator):
        # memory changes between the two regens, so the request keys differ
        gen, transport = generator
        session = self.make_session_with_card(gen)
        memory_before = session.generator_memory[ScriptCategory.PRIMITIVE]
        req1 = GeneratorRequest(
            category=ScriptCategory.PRIMITIVE,
            instruction="square",
            short_term_memory=memory_before,
            compile_error="same error",
        )
        msgs1 = [m.as_dict() for m in build_messages(req1, gen.store)]
        # simulate the memory having been replaced by the first regen output
        req2 = GeneratorRequest(
            category=ScriptCategory.PRIMITIVE,
            instruction="square",
            short_term_memory=memory_before + "\n// regenerated",
            compile_error="same error",
        )
        msgs2 = [m.as_dict() for m in build_messages(req2, gen.store)]
        model = gen.gateway.config.generator_model
        assert fixture_key(model, msgs1) != fixture_key(model, msgs2)
