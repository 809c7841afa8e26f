from .chains import (
    MAX_VALIDATION_ROUNDS,
    HelperContext,
    PromptHelper,
    SchemaError,
    ValidationExhaustedError,
)

__all__ = [
    "MAX_VALIDATION_ROUNDS",
    "HelperContext",
    "PromptHelper",
    "SchemaError",
    "ValidationExhaustedError",
]
