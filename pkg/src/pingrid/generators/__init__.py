from .generator import (
    RETRIEVAL_K,
    CategoryMismatchError,
    GeneratorRequest,
    ScriptGenerator,
    build_messages,
)
from .outputs import StructuredOutput, StructuredOutputError, parse_structured_output

__all__ = [
    "RETRIEVAL_K",
    "CategoryMismatchError",
    "GeneratorRequest",
    "ScriptGenerator",
    "StructuredOutput",
    "StructuredOutputError",
    "build_messages",
    "parse_structured_output",
]
