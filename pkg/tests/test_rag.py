from __future__ import annotations

import pytest

from pingrid.core import ScriptCategory
from pingrid.errors import ValidationError
from pingrid.gateway import LlmGateway, ModelConfig, hash_embed
from pingrid.rag import ExampleStore, seeded_store

from .oracles import cosine


@pytest.fixture
def gateway(tmp_path):
    return LlmGateway(ModelConfig(mode="replay", fixture_dir=tmp_path))


@pytest.fixture
def store(gateway):
    return ExampleStore(gateway)


PRIM = ScriptCategory.PRIMITIVE
ANIM = ScriptCategory.ANIMATION


class TestAddExample:
    def test_partition(self, store):
        store.add_example(PRIM, "make a square", "code-a")
        assert store.size(PRIM) == 1
        assert store.size(ANIM) == 0

    def test_duplicate_instruction_gets_distinct_ids(self, store):
        a = store.add_example(PRIM, "make a square", "code-a")
        b = store.add_example(PRIM, "make a square", "code-a")
        assert a.id != b.id

    def test_empty_code_rejected(self, store):
        with pytest.raises(ValidationError):
            store.add_example(PRIM, "make a square", "")

    def test_embedding_dimension_consistent(self, store):
        store.add_example(PRIM, "alpha", "a")
        store.add_example(PRIM, "beta", "b")
        dims = {len(r.embedding) for r in store.collections[PRIM]}
        assert dims == {64}


class TestTopK:
    def test_k_exceeding_size_returns_all(self, store):
        store.add_example(PRIM, "one", "a")
        store.add_example(PRIM, "two", "b")
        assert len(store.top_k(PRIM, "anything", k=3)) == 2

    def test_empty_collection_returns_empty(self, store):
        assert store.top_k(PRIM, "anything", k=3) == []

    def test_k_below_one_rejected(self, store):
        with pytest.raises(ValidationError):
            store.top_k(PRIM, "x", k=0)

    def test_exact_query_ranks_first(self, store):
        store.add_example(PRIM, "create a tall tower", "a")
        store.add_example(PRIM, "make a flat plane", "b")
        store.add_example(PRIM, "draw a circle outline", "c")
        top = store.top_k(PRIM, "make a flat plane", k=1)
        assert top[0].instruction == "make a flat plane"

    def test_matches_brute_force_oracle(self, store):
        instructions = [
            "create a large square in the middle",
            "make a small circle on the left",
            "draw a tall spike in each corner",
            "raise a wide pyramid",
            "show a flat terrace",
            "build steps from left to right",
            "form a ring around the center",
            "lift a narrow wall across the top",
            "pop up a dome shape",
            "carve a valley through the middle",
        ]
        for text in instructions:
            store.add_example(PRIM, text, "code")
        query = "make a circle shape near the left side"
        query_vec = hash_embed(query)
        expected = sorted(
            range(len(instructions)),
            key=lambda i: (-cosine(query_vec, hash_embed(instructions[i])), i),
        )[:3]
        got = store.top_k(PRIM, query, k=3)
        assert [r.instruction for r in got] == [instructions[i] for i in expected]

    def test_similarity_sequence_non_increasing(self, store):
        texts = ["alpha beta", "beta gamma", "gamma delta", "delta epsilon", "zeta eta"]
        for t in texts:
            store.add_example(PRIM, t, "code")
        query_vec = hash_embed("beta")
        records = store.top_k(PRIM, "beta", k=5)
        sims = [cosine(query_vec, list(r.embedding)) for r in records]
        assert sims == sorted(sims, reverse=True)

    def test_never_crosses_categories(self, store):
        store.add_example(PRIM, "marker primitive text", "p")
        store.add_example(ANIM, "marker animation text", "a")
        got = store.top_k(PRIM, "marker text", k=5)
        assert all(r.category is PRIM for r in got)
        got = store.top_k(ANIM, "marker text", k=5)
        assert all(r.category is ANIM for r in got)

    def test_merged_search_spans_categories(self, store):
        store.add_example(PRIM, "unique primitive marker", "p")
        store.add_example(ANIM, "unique animation marker", "a")
        got = store.top_k_merged("unique marker", k=5)
        assert {r.category for r in got} == {PRIM, ANIM}


class TestPersistence:
    def test_round_trip(self, store, gateway, tmp_path):
        store.add_example(PRIM, "square", "code-sq")
        store.add_example(ANIM, "bounce", "code-bn")
        out = tmp_path / "collections"
        store.save(out)
        reloaded = ExampleStore(gateway)
        reloaded.load(out)
        assert reloaded.collections == store.collections

    def test_jsonl_schema(self, store, tmp_path):
        store.add_example(PRIM, "square", "code-sq")
        out = tmp_path / "collections"
        store.save(out)
        import json

        row = json.loads((out / "primitive.jsonl").read_text().splitlines()[0])
        assert set(row) == {"id", "instruction", "code", "embedding"}


class TestSeededStore:
    def test_canonical_trio_present(self, gateway):
        store = seeded_store(gateway)
        assert store.size(ScriptCategory.PRIMITIVE) >= 1
        assert store.size(ScriptCategory.ANIMATION) >= 1
        assert store.size(ScriptCategory.INTERACTION) >= 1
        prim_instructions = [r.instruction for r in store.collections[ScriptCategory.PRIMITIVE]]
        assert "Generate a customizable square shape" in prim_instructions

    def test_square_query_retrieves_square_example(self, gateway):
        store = seeded_store(gateway)
        top = store.top_k(ScriptCategory.PRIMITIVE, "Generate a customizable square shape", k=1)
        assert top[0].id == "primitive-000"

    def test_all_seed_code_compiles(self, gateway):
        from pingrid.runtime import compile_check

        store = seeded_store(gateway)
        for category, collection in store.collections.items():
            for record in collection:
                compile_check(record.code, category)
