from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pingrid.core import (
    GRID_X,
    GRID_Y,
    PIN_COUNT,
    HistoryCard,
    InstructionBundle,
    ParameterSet,
    ScriptArtifact,
    ScriptCategory,
    SegmentPlan,
    Session,
    append_card,
    pin_index,
    rollback,
    slider_bounds,
)
from pingrid.errors import NotFoundError, ValidationError


def make_card(card_id: str, parent: str | None, text: str = "make a square") -> HistoryCard:
    plan = SegmentPlan(is_followup=False, primitive=text, animation=None, interaction=None)
    artifact = ScriptArtifact(
        category=ScriptCategory.PRIMITIVE,
        message="ok",
        source=f"// {card_id}",
        parameters={"h": 25.0},
        origin_prompt=text,
    )
    return HistoryCard(
        id=card_id,
        parent_id=parent,
        user_input=text,
        plan=plan,
        instructions=InstructionBundle(primitive=f"Build [{card_id}]", animation=None, interaction=None),
        artifacts=[artifact],
        enabled={0: True},
        created_at=0.0,
    )


class TestPinIndex:
    def test_origin(self):
        assert pin_index(0, 0) == 0

    def test_last_cell(self):
        assert pin_index(23, 23) == 575

    def test_hand_evaluated(self):
        # y*24 + x evaluated by hand: 2*24 + 5
        assert pin_index(5, 2) == 53

    def test_bijection(self):
        seen = {pin_index(x, y) for y in range(GRID_Y) for x in range(GRID_X)}
        assert seen == set(range(PIN_COUNT))

    @pytest.mark.parametrize("x,y", [(-1, 0), (0, -1), (24, 0), (0, 24)])
    def test_out_of_range(self, x, y):
        with pytest.raises(ValidationError):
            pin_index(x, y)


class TestSliderBounds:
    def test_positive_initial(self):
        spec = slider_bounds(30)
        assert (spec.min, spec.max) == (10.0, 90.0)

    def test_zero_initial(self):
        spec = slider_bounds(0)
        assert (spec.min, spec.max) == (-10.0, 10.0)

    def test_negative_initial_preserves_ordering(self):
        spec = slider_bounds(-6)
        assert (spec.min, spec.max) == (-18.0, -2.0)

    def test_non_finite_rejected(self):
        with pytest.raises(ValidationError):
            slider_bounds(float("nan"))
        with pytest.raises(ValidationError):
            slider_bounds(float("inf"))

    @given(st.floats(allow_nan=False, allow_infinity=False))
    def test_initial_always_inside_bounds(self, initial):
        spec = slider_bounds(initial)
        assert spec.min <= spec.initial <= spec.max


def linear_session(n: int) -> Session:
    session = Session()
    parent = None
    for i in range(1, n + 1):
        card = make_card(f"card-{i}", parent, text=f"prompt {i}")
        append_card(session, card)
        parent = card.id
    return session


class TestRollback:
    def test_rollback_to_only_card_is_identity(self):
        session = linear_session(1)
        before = (session.active_card_id, list(session.helper_memory), dict(session.generator_memory))
        rollback(session, "card-1")
        after = (session.active_card_id, list(session.helper_memory), dict(session.generator_memory))
        assert before == after

    def test_rollback_replays_parent_chain(self):
        # 3-card linear chain; replaying the chain that ends at card 1 by hand
        # leaves exactly one helper-memory entry.
        session = linear_session(3)
        rollback(session, "card-1")
        assert session.active_card_id == "card-1"
        assert len(session.helper_memory) == 1
        assert session.helper_memory[0][0] == "prompt 1"
        assert session.generator_memory[ScriptCategory.PRIMITIVE] == "// card-1"

    def test_new_prompt_after_rollback_branches(self):
        session = linear_session(3)
        rollback(session, "card-1")
        branch = make_card("card-4", session.active_card_id, text="prompt 4")
        append_card(session, branch)
        assert session.card_by_id("card-4").parent_id == "card-1"
        # history is append-only: the abandoned cards are still present
        assert [c.id for c in session.cards] == ["card-1", "card-2", "card-3", "card-4"]

    def test_rollback_is_idempotent(self):
        session = linear_session(3)
        rollback(session, "card-2")
        snapshot = (session.active_card_id, list(session.helper_memory), dict(session.generator_memory))
        rollback(session, "card-2")
        assert (session.active_card_id, list(session.helper_memory), dict(session.generator_memory)) == snapshot

    def test_unknown_card_not_found(self):
        session = linear_session(2)
        with pytest.raises(NotFoundError):
            rollback(session, "card-9")

    def test_card_count_never_decreases(self):
        session = linear_session(3)
        counts = [len(session.cards)]
        rollback(session, "card-1")
        counts.append(len(session.cards))
        append_card(session, make_card("card-4", "card-1"))
        counts.append(len(session.cards))
        assert counts == sorted(counts)


class TestTypes:
    def test_non_followup_requires_primitive(self):
        with pytest.raises(ValidationError):
            SegmentPlan(is_followup=False, primitive=None, animation="x", interaction=None)

    def test_followup_may_omit_primitive(self):
        plan = SegmentPlan(is_followup=True, primitive=None, animation="spin it", interaction=None)
        assert plan.primitive is None

    def test_parameter_set_rejects_duplicates_and_bad_identifiers(self):
        with pytest.raises(ValidationError):
            ParameterSet(names=("a", "a"))
        with pytest.raises(ValidationError):
            ParameterSet(names=("1abc",))
        with pytest.raises(ValidationError):
            ParameterSet(names=("",))

    def test_parameter_set_union_keeps_order(self):
        a = ParameterSet(names=("x", "y"))
        b = ParameterSet(names=("y", "z"))
        assert a.union(b).names == ("x", "y", "z")

    def test_bracketed_names(self):
        bundle = InstructionBundle(
            primitive="set [posX] and [posY]", animation="vary [scale]", interaction=None
        )
        assert bundle.bracketed_names() == {"posX", "posY", "scale"}

    def test_enabled_must_cover_artifacts(self):
        card = make_card("c1", None)
        with pytest.raises(ValidationError):
            HistoryCard(
                id="c2",
                parent_id=None,
                user_input="x",
                plan=card.plan,
                instructions=card.instructions,
                artifacts=card.artifacts,
                enabled={},
                created_at=0.0,
            )
