from __future__ import annotations

import hashlib
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pingrid.errors import ValidationError
from pingrid.gateway import (
    FALLBACK_MODEL,
    ChatMessage,
    FixtureStore,
    GatewayError,
    LlmGateway,
    ModelConfig,
    ReplayMissError,
    fixture_key,
    hash_embed,
)

from .fakes import FlakyTransport, ForbiddenTransport, ScriptedTransport


def msg(role: str, content: str) -> ChatMessage:
    return ChatMessage(role=role, content=content)


class TestChatMessage:
    def test_valid_roles(self):
        for role in ("system", "user", "assistant"):
            assert msg(role, "x").role == role

    def test_bad_role(self):
        with pytest.raises(ValidationError):
            msg("tool", "x")

    def test_empty_content(self):
        with pytest.raises(ValidationError):
            msg("user", "")


class TestModelConfig:
    def test_replay_requires_fixture_dir(self):
        with pytest.raises(ValidationError):
            ModelConfig(mode="replay", fixture_dir=None)

    def test_bad_mode(self):
        with pytest.raises(ValidationError):
            ModelConfig(mode="cached", fixture_dir=None)

    def test_from_env(self):
        cfg = ModelConfig.from_env({"PINGRID_FIXTURES": "/tmp/f", "PINGRID_MODE": "replay"})
        assert cfg.mode == "replay"
        assert str(cfg.fixture_dir) == "/tmp/f"


class TestFixtureKeys:
    def test_identical_requests_identical_keys(self):
        messages = [{"role": "system", "content": "a"}, {"role": "user", "content": "b"}]
        rebuilt = [dict(role="system", content="a"), dict(content="b", role="user")]
        assert fixture_key("m", messages) == fixture_key("m", rebuilt)

    def test_key_depends_on_model_and_content(self):
        messages = [{"role": "user", "content": "b"}]
        assert fixture_key("m1", messages) != fixture_key("m2", messages)
        assert fixture_key("m1", messages) != fixture_key("m1", [{"role": "user", "content": "c"}])

    def test_chat_and_embed_namespaces_distinct(self):
        messages = [{"role": "user", "content": "b"}]
        assert fixture_key("m", messages, kind="chat") != fixture_key("m", messages, kind="embed")


class TestRecordReplay:
    def test_record_then_replay_identical(self, tmp_path):
        messages = [msg("system", "sys"), msg("user", "hello")]
        recorder = LlmGateway(
            ModelConfig(mode="record", fixture_dir=tmp_path),
            transport=ScriptedTransport(lambda m, msgs: "the answer\nwith lines"),
        )
        recorded = recorder.complete("test-model", messages)

        replayer = LlmGateway(
            ModelConfig(mode="replay", fixture_dir=tmp_path),
            transport=ForbiddenTransport(),
        )
        replayed = replayer.complete("test-model", messages)
        assert replayed == recorded

    def test_replay_never_touches_transport(self, tmp_path):
        messages = [msg("user", "hello")]
        LlmGateway(
            ModelConfig(mode="record", fixture_dir=tmp_path),
            transport=ScriptedTransport(lambda m, msgs: "r"),
        ).complete("m", messages)
        forbidden = ForbiddenTransport()
        gateway = LlmGateway(ModelConfig(mode="replay", fixture_dir=tmp_path), transport=forbidden)
        gateway.complete("m", messages)
        gateway.embed(FALLBACK_MODEL, "anything")
        assert forbidden.calls == 0

    def test_replay_miss_names_key(self, tmp_path):
        gateway = LlmGateway(ModelConfig(mode="replay", fixture_dir=tmp_path), transport=ForbiddenTransport())
        messages = [msg("user", "never recorded")]
        with pytest.raises(ReplayMissError) as err:
            gateway.complete("m", messages)
        assert err.value.key == fixture_key("m", [m.as_dict() for m in messages])

    def test_empty_messages_rejected(self, tmp_path):
        gateway = LlmGateway(ModelConfig(mode="replay", fixture_dir=tmp_path), transport=ForbiddenTransport())
        with pytest.raises(ValidationError):
            gateway.complete("m", [])

    def test_embed_record_replay(self, tmp_path):
        recorder = LlmGateway(
            ModelConfig(mode="record", fixture_dir=tmp_path, embedding_model="real-embedder"),
            transport=ScriptedTransport(lambda m, msgs: "?"),
        )
        vec = recorder.embed("real-embedder", "some text")
        replayer = LlmGateway(
            ModelConfig(mode="replay", fixture_dir=tmp_path),
            transport=ForbiddenTransport(),
        )
        assert replayer.embed("real-embedder", "some text") == vec


class TestRetries:
    def make(self, transport) -> LlmGateway:
        return LlmGateway(ModelConfig(mode="live"), transport=transport, sleep=lambda s: None)

    def test_succeeds_after_transient_failures(self):
        transport = FlakyTransport(failures=2)
        gateway = self.make(transport)
        assert gateway.complete("m", [msg("user", "x")]) == "ok"
        assert transport.calls == 3

    def test_gives_up_with_retry_count(self):
        transport = FlakyTransport(failures=99)
        gateway = self.make(transport)
        with pytest.raises(GatewayError) as err:
            gateway.complete("m", [msg("user", "x")])
        assert err.value.retries == 2
        assert transport.calls == 3


class TestFallbackEmbedder:
    def test_deterministic(self):
        assert hash_embed("create a heart") == hash_embed("create a heart")

    def test_distinct_for_close_strings(self):
        # hand-computed at D=8: each token hashes to (bucket, sign); the two
        # inputs are single distinct tokens, so the vectors differ
        def oracle(text: str, dim: int = 8) -> list[float]:
            vec = [0.0] * dim
            for token in [text]:
                digest = hashlib.sha256(token.encode()).digest()
                vec[int.from_bytes(digest[:4], "big") % dim] += 1.0 if digest[4] % 2 == 0 else -1.0
            norm = math.sqrt(sum(v * v for v in vec))
            return [v / norm for v in vec]

        assert hash_embed("abc", 8) == oracle("abc")
        assert hash_embed("abd", 8) == oracle("abd")
        assert hash_embed("abc", 8) != hash_embed("abd", 8)

    def test_unit_norm(self):
        vec = hash_embed("move the square to the left")
        assert math.sqrt(sum(v * v for v in vec)) == pytest.approx(1.0)

    def test_dimension(self):
        assert len(hash_embed("x", 64)) == 64
        assert len(hash_embed("x", 16)) == 16

    def test_empty_text_rejected_by_gateway(self, tmp_path):
        gateway = LlmGateway(ModelConfig(mode="replay", fixture_dir=tmp_path), transport=ForbiddenTransport())
        with pytest.raises(ValidationError):
            gateway.embed(FALLBACK_MODEL, "")

    @given(st.text(min_size=1, max_size=60))
    def test_norm_property(self, text):
        vec = hash_embed(text)
        norm = math.sqrt(sum(v * v for v in vec))
        assert norm == pytest.approx(1.0, abs=1e-9)
