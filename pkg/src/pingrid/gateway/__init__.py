from .client import (
    ChatMessage,
    GatewayError,
    HttpTransport,
    LlmGateway,
    ModelConfig,
    Transport,
)
from .fallback import FALLBACK_DIM, FALLBACK_MODEL, hash_embed
from .fixtures import FixtureStore, ReplayMissError, canonical_request, fixture_key

__all__ = [
    "FALLBACK_DIM",
    "FALLBACK_MODEL",
    "ChatMessage",
    "FixtureStore",
    "GatewayError",
    "HttpTransport",
    "LlmGateway",
    "ModelConfig",
    "ReplayMissError",
    "Transport",
    "canonical_request",
    "fixture_key",
    "hash_embed",
]
