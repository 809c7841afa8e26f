"""Category-partitioned example collections with top-k cosine retrieval.

Collections are small (tens of records), so retrieval is an exact in-memory
scan: deterministic, oracle-testable, and trivially correct. Ties break by
insertion order, earlier record first.
"""

from __future__ import annotations

import json
import math
import threading
from dataclasses import dataclass, field
from pathlib import Path

from ..core import ScriptCategory
from ..errors import ValidationError
from ..gateway import LlmGateway


@dataclass(frozen=True)
class ExampleRecord:
    id: str
    category: ScriptCategory
    instruction: str
    code: str
    embedding: tuple[float, ...]


def cosine_similarity(a: tuple[float, ...] | list[float], b: tuple[float, ...] | list[float]) -> float:
    dot = sum(x * y for x, y in zip(a, b))
    norm_a = math.sqrt(sum(x * x for x in a))
    norm_b = math.sqrt(sum(y * y for y in b))
    if norm_a == 0.0 or norm_b == 0.0:
        return 0.0
    return dot / (norm_a * norm_b)


@dataclass
class ExampleStore:
    gateway: LlmGateway
    collections: dict[ScriptCategory, list[ExampleRecord]] = field(
        default_factory=lambda: {c: [] for c in ScriptCategory}
    )

    def __post_init__(self) -> None:
        self._lock = threading.Lock()
        self._counter = 0

    @property
    def _embedding_model(self) -> str:
        return self.gateway.config.embedding_model

    def add_example(
        self, category: ScriptCategory, instruction: str, code: str, record_id: str | None = None
    ) -> ExampleRecord:
        if not instruction or not code:
            raise ValidationError("examples need non-empty instruction and code")
        embedding = tuple(self.gateway.embed(self._embedding_model, instruction))
        with self._lock:
            collection = self.collections[category]
            if record_id is None:
                self._counter += 1
                record_id = f"{category.value}-{self._counter:04d}"
            if any(r.id == record_id for r in collection):
                raise ValidationError(f"duplicate example id {record_id!r}")
            record = ExampleRecord(
                id=record_id,
                category=category,
                instruction=instruction,
                code=code,
                embedding=embedding,
            )
            collection.append(record)
        return record

    def size(self, category: ScriptCategory) -> int:
        return len(self.collections[category])

    def top_k(self, category: ScriptCategory, query: str, k: int = 3) -> list[ExampleRecord]:
        if k < 1:
            raise ValidationError(f"k must be >= 1, got {k}")
        collection = self.collections[category]
        if not collection:
            return []
        query_vec = self.gateway.embed(self._embedding_model, query)
        scored = [
            (cosine_similarity(query_vec, record.embedding), idx, record)
            for idx, record in enumerate(collection)
        ]
        # descending similarity; earlier insertion wins ties
        scored.sort(key=lambda t: (-t[0], t[1]))
        return [record for _, _, record in scored[: min(k, len(collection))]]

    def top_k_merged(self, query: str, k: int = 3) -> list[ExampleRecord]:
        """Retrieval over the union of all three collections (baseline-rag)."""
        merged: list[ExampleRecord] = []
        for category in ScriptCategory:
            merged.extend(self.collections[category])
        if not merged:
            return []
        query_vec = self.gateway.embed(self._embedding_model, query)
        scored = [
            (cosine_similarity(query_vec, record.embedding), idx, record)
            for idx, record in enumerate(merged)
        ]
        scored.sort(key=lambda t: (-t[0], t[1]))
        return [record for _, _, record in scored[: min(k, len(merged))]]

    # ---- persistence: one JSON-lines file per category ----

    def save(self, directory: Path) -> None:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        for category, collection in self.collections.items():
            path = directory / f"{category.value}.jsonl"
            with path.open("w") as handle:
                for record in collection:
                    handle.write(
                        json.dumps(
                            {
                                "id": record.id,
                                "instruction": record.instruction,
                                "code": record.code,
                                "embedding": list(record.embedding),
                            }
                        )
                        + "\n"
                    )

    def load(self, directory: Path) -> None:
        directory = Path(directory)
        for category in ScriptCategory:
            path = directory / f"{category.value}.jsonl"
            if not path.exists():
                continue
            records: list[ExampleRecord] = []
            for line in path.read_text().splitlines():
                if not line.strip():
                    continue
                row = json.loads(line)
                records.append(
                    ExampleRecord(
                        id=row["id"],
                        category=category,
                        instruction=row["instruction"],
                        code=row["code"],
                        embedding=tuple(float(v) for v in row["embedding"]),
                    )
                )
            self.collections[category] = records
