from .report import VARIANTS, EvalReport, SampleResult, success_rate
from .runner import CorpusRunner, build_baseline_messages, load_corpus, run_corpus

__all__ = [
    "VARIANTS",
    "CorpusRunner",
    "EvalReport",
    "SampleResult",
    "build_baseline_messages",
    "load_corpus",
    "run_corpus",
    "success_rate",
]
