"""Corpus runner for the four pipeline variants.

baseline          one code-generator call, fixed canonical trio as few-shot
baseline-rag      one call, top-3 retrieval over the merged collection
segmentation      segmentation chain only, then per-segment generation
full              the complete helper pipeline, then per-segment generation

A segment scores 1 iff its script passes the compile check. Failures of any
kind (schema, replay miss, generation) score 0 and the run continues.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from ..core import CATEGORY_ORDER, ScriptCategory
from ..data import canonical_trio
from ..errors import PingridError, ValidationError
from ..gateway import ChatMessage, LlmGateway, ModelConfig
from ..generators import GeneratorRequest, ScriptGenerator, parse_structured_output
from ..helper import HelperContext, PromptHelper
from ..prompts import prompt_text
from ..rag import ExampleStore, seeded_store
from ..runtime import CompileError, compile_check
from .report import EvalReport, SampleResult


def load_corpus(path: Path) -> list[str]:
    path = Path(path)
    if not path.exists():
        raise ValidationError(f"corpus file {path} does not exist")
    prompts = [line.strip() for line in path.read_text().splitlines() if line.strip()]
    if not prompts:
        raise ValidationError(f"corpus file {path} is empty")
    return prompts


def _compiles(source: str, category: ScriptCategory) -> bool:
    try:
        compile_check(source, category)
        return True
    except CompileError:
        return False


def build_baseline_messages(
    prompt: str, examples: list[tuple[ScriptCategory, str, str]]
) -> list[ChatMessage]:
    """Single-generator prompt: the primitive agent's rule prompt with mixed
    few-shot examples and the raw user prompt."""
    messages = [ChatMessage(role="system", content=prompt_text("primitive_agent"))]
    for category, instruction, code in examples:
        messages.append(ChatMessage(role="user", content=json.dumps({"Prompt": instruction})))
        messages.append(
            ChatMessage(
                role="assistant",
                content=json.dumps(
                    {"type": category.value, "message": instruction, "content": code},
                    ensure_ascii=False,
                ),
            )
        )
    messages.append(ChatMessage(role="user", content=json.dumps({"Prompt": prompt})))
    return messages


class CorpusRunner:
    def __init__(self, config: ModelConfig, gateway: LlmGateway | None = None, store: ExampleStore | None = None, k: int = 3):
        self.gateway = gateway or LlmGateway(config)
        self.store = store or seeded_store(self.gateway)
        self.helper = PromptHelper(self.gateway)
        self.generator = ScriptGenerator(gateway=self.gateway, store=self.store)
        self.k = k
        trio = canonical_trio()
        self._canonical = [
            (ScriptCategory(row["category"]), row["instruction"], row["code"])
            for row in (trio["primitive"], trio["animation"], trio["interaction"])
        ]

    # ---- variants ----

    def run_sample(self, prompt: str, variant: str) -> SampleResult:
        try:
            if variant == "baseline":
                return self._run_single_generator(prompt, merged_rag=False)
            if variant == "baseline-rag":
                return self._run_single_generator(prompt, merged_rag=True)
            if variant == "segmentation":
                return self._run_segmented(prompt, full_pipeline=False)
            if variant == "full":
                return self._run_segmented(prompt, full_pipeline=True)
            raise ValidationError(f"unknown variant {variant!r}")
        except PingridError as exc:
            return SampleResult(prompt=prompt, outcomes=[0], error=f"{type(exc).__name__}: {exc}")

    def _run_single_generator(self, prompt: str, merged_rag: bool) -> SampleResult:
        if merged_rag:
            records = self.store.top_k_merged(prompt, k=self.k)
            examples = [(r.category, r.instruction, r.code) for r in records]
        else:
            examples = self._canonical
        messages = build_baseline_messages(prompt, examples)
        raw = self.gateway.complete(self.gateway.config.generator_model, messages)
        parsed = parse_structured_output(raw)
        ok = _compiles(parsed.source, parsed.category)
        return SampleResult(prompt=prompt, outcomes=[1 if ok else 0])

    def _run_segmented(self, prompt: str, full_pipeline: bool) -> SampleResult:
        ctx = HelperContext()
        if full_pipeline:
            plan, _params, bundle = self.helper.run(prompt, ctx)
            instructions = {c: bundle.for_category(c) for c in CATEGORY_ORDER}
        else:
            plan = self.helper.segment(prompt, ctx)
            instructions = dict(plan.segments())

        outcomes: list[int] = []
        errors: list[str] = []
        parent_params: dict[str, float] = {}
        for category in CATEGORY_ORDER:
            instruction = instructions.get(category)
            if instruction is None:
                continue
            try:
                request = GeneratorRequest(
                    category=category,
                    instruction=instruction,
                    parent_params=None if category is ScriptCategory.PRIMITIVE else parent_params,
                )
                artifact = self.generator.generate(request)
                if category is ScriptCategory.PRIMITIVE:
                    parent_params = dict(artifact.parameters)
                outcomes.append(1 if _compiles(artifact.source, category) else 0)
            except PingridError as exc:
                outcomes.append(0)
                errors.append(f"{category.value}: {type(exc).__name__}: {exc}")
        if not outcomes:
            outcomes = [0]
            errors.append("no segments produced")
        return SampleResult(
            prompt=prompt, outcomes=outcomes, error="; ".join(errors) if errors else None
        )

    def run(self, prompts: list[str], variant: str, jobs: int = 1) -> EvalReport:
        calls_before = len(self.gateway.call_log)
        if jobs <= 1:
            samples = [self.run_sample(prompt, variant) for prompt in prompts]
        else:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                samples = list(pool.map(lambda p: self.run_sample(p, variant), prompts))
        latencies = [entry["seconds"] for entry in self.gateway.call_log[calls_before:]]
        return EvalReport(
            variant=variant,
            per_sample=samples,
            latencies=latencies,
            mode=self.gateway.config.mode,
        )


def run_corpus(
    corpus_path: Path,
    variant: str,
    config: ModelConfig,
    jobs: int = 1,
    k: int = 3,
) -> EvalReport:
    prompts = load_corpus(corpus_path)
    runner = CorpusRunner(config, k=k)
    return runner.run(prompts, variant, jobs=jobs)
