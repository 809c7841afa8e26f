"""Per-sample segment outcomes, the aggregate success rate, and report IO.

The success rate is the mean over samples of the mean over that sample's
segments of the binary load-without-compile-error outcome:
    S = (1/n) * sum_i ( (1/m_i) * sum_j s_ij )
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import ValidationError

VARIANTS = ("baseline", "baseline-rag", "segmentation", "full")


@dataclass
class SampleResult:
    prompt: str
    outcomes: list[int]  # s_ij, one 0/1 per produced segment
    error: str | None = None

    @property
    def segment_count(self) -> int:
        return len(self.outcomes)

    def as_dict(self) -> dict:
        return {
            "prompt": self.prompt,
            "m_i": self.segment_count,
            "s_ij": list(self.outcomes),
            "error": self.error,
        }

    @staticmethod
    def from_dict(data: dict) -> "SampleResult":
        return SampleResult(
            prompt=data["prompt"],
            outcomes=[int(v) for v in data["s_ij"]],
            error=data.get("error"),
        )


def success_rate(samples: list[SampleResult]) -> float:
    if not samples:
        raise ValidationError("success rate needs at least one sample")
    total = 0.0
    for sample in samples:
        if sample.segment_count < 1:
            raise ValidationError(f"sample {sample.prompt!r} has no segments")
        total += sum(sample.outcomes) / sample.segment_count
    return total / len(samples)


@dataclass
class EvalReport:
    variant: str
    per_sample: list[SampleResult]
    latencies: list[float] = field(default_factory=list)
    mode: str = "replay"

    def __post_init__(self) -> None:
        if self.variant not in VARIANTS:
            raise ValidationError(f"variant must be one of {VARIANTS}, got {self.variant!r}")

    @property
    def n(self) -> int:
        return len(self.per_sample)

    @property
    def rate(self) -> float:
        return success_rate(self.per_sample)

    @property
    def mean_latency(self) -> float:
        return sum(self.latencies) / len(self.latencies) if self.latencies else 0.0

    def as_dict(self) -> dict:
        return {
            "variant": self.variant,
            "n": self.n,
            "perSample": [s.as_dict() for s in self.per_sample],
            "successRate": self.rate,
            "latencies": list(self.latencies),
            "meanLatency": self.mean_latency,
            # replay latencies are fixture reads, not model runtime
            "latencyMode": "physical" if self.mode == "live" else "non-physical",
        }

    def save(self, path: Path) -> None:
        Path(path).write_text(json.dumps(self.as_dict(), indent=2) + "\n")

    @staticmethod
    def load(path: Path) -> "EvalReport":
        data = json.loads(Path(path).read_text())
        report = EvalReport(
            variant=data["variant"],
            per_sample=[SampleResult.from_dict(s) for s in data["perSample"]],
            latencies=[float(v) for v in data["latencies"]],
            mode="live" if data.get("latencyMode") == "physical" else "replay",
        )
        return report
