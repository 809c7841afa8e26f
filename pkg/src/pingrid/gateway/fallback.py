"""Deterministic offline embedder: token-hash bag-of-words, L2-normalized.

Lets retrieval ranking run with no fixtures and no network. Each lowercased
token is hashed (SHA-256) to pick a bucket and a sign; the resulting count
vector is L2-normalized.
"""

from __future__ import annotations

import hashlib
import math
import re

FALLBACK_MODEL = "hash-64"
FALLBACK_DIM = 64

_TOKEN_RE = re.compile(r"[a-z0-9]+")


def _token_bucket(token: str, dim: int) -> tuple[int, float]:
    digest = hashlib.sha256(token.encode("utf-8")).digest()
    bucket = int.from_bytes(digest[:4], "big") % dim
    sign = 1.0 if digest[4] % 2 == 0 else -1.0
    return bucket, sign


def hash_embed(text: str, dim: int = FALLBACK_DIM) -> list[float]:
    vec = [0.0] * dim
    for token in _TOKEN_RE.findall(text.lower()):
        bucket, sign = _token_bucket(token, dim)
        vec[bucket] += sign
    norm = math.sqrt(sum(v * v for v in vec))
    if norm == 0.0:
        vec[0] = 1.0
        return vec
    return [v / norm for v in vec]
