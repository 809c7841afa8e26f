from .app import create_app
from .events import CANONICAL_PHASES, ERROR_PHASE, EventBus, StepFeedback
from .persistence import SessionLog, logged_cards, replay_log
from .sessions import (
    MAX_REGENS,
    GenerationFailedError,
    ServiceConfig,
    SessionManager,
    SessionState,
)

__all__ = [
    "CANONICAL_PHASES",
    "ERROR_PHASE",
    "EventBus",
    "GenerationFailedError",
    "MAX_REGENS",
    "ServiceConfig",
    "SessionLog",
    "SessionManager",
    "SessionState",
    "StepFeedback",
    "create_app",
    "logged_cards",
    "replay_log",
]
