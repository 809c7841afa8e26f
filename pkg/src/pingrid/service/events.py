"""Step feedback and the per-session event fan-out.

Feedback events accumulate in a backlog so late subscribers (and tests) see
the full pipeline narration; frames are latest-wins for slow consumers.
"""

from __future__ import annotations

import queue
import threading
from dataclasses import dataclass, field

CANONICAL_PHASES = (
    "segmented",
    "parameters",
    "validated",
    "instructed",
    "generated:primitive",
    "generated:animation",
    "generated:interaction",
    "loaded",
)

ERROR_PHASE = "error"


@dataclass(frozen=True)
class StepFeedback:
    session_id: str
    phase: str
    detail: str

    def as_dict(self) -> dict:
        return {"sessionId": self.session_id, "phase": self.phase, "detail": self.detail}


@dataclass
class EventBus:
    session_id: str
    feedback_log: list[StepFeedback] = field(default_factory=list)
    latest_frame: dict | None = None

    def __post_init__(self) -> None:
        self._subscribers: list[queue.Queue] = []
        self._lock = threading.Lock()

    def emit_feedback(self, phase: str, detail: str) -> StepFeedback:
        event = StepFeedback(session_id=self.session_id, phase=phase, detail=detail)
        with self._lock:
            self.feedback_log.append(event)
            subscribers = list(self._subscribers)
        message = {"event": "feedback", "data": event.as_dict()}
        for sub in subscribers:
            _offer(sub, message)
        return event

    def emit_frame(self, seq: int, heights: list[float]) -> None:
        message = {"event": "frame", "data": {"seq": seq, "heights": heights}}
        with self._lock:
            self.latest_frame = message
            subscribers = list(self._subscribers)
        for sub in subscribers:
            _offer(sub, message, frame=True)

    def subscribe(self) -> queue.Queue:
        sub: queue.Queue = queue.Queue(maxsize=1024)
        with self._lock:
            for event in self.feedback_log:
                _offer(sub, {"event": "feedback", "data": event.as_dict()})
            if self.latest_frame is not None:
                _offer(sub, self.latest_frame)
            self._subscribers.append(sub)
        return sub

    def unsubscribe(self, sub: queue.Queue) -> None:
        with self._lock:
            if sub in self._subscribers:
                self._subscribers.remove(sub)


def _offer(sub: queue.Queue, message: dict, frame: bool = False) -> None:
    try:
        sub.put_nowait(message)
    except queue.Full:
        if frame:
            return  # latest-wins: a slow consumer just misses this frame
        try:
            sub.get_nowait()  # drop the oldest to keep feedback flowing
            sub.put_nowait(message)
        except (queue.Empty, queue.Full):
            pass
