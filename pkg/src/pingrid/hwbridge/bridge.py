"""The runtime-to-hardware mirror.

Outbound: each frame is quantized to a 576-byte wire frame and published to
the target topic; while disconnected a single latest frame is buffered and
flushed after reconnect (stale frames are worthless for a live surface).
Inbound: actual pin heights arrive on the actual topic; a button pin whose
actual height sits more than press_threshold below its target is pressed.
Press detection is memoryless: same (target, actual, threshold), same answer.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass, field

from ..core import PIN_COUNT, HeightField
from ..runtime import Scene
from .mqtt import MqttClient, MqttError
from .wire import FRAME_BYTES, encode_frame

logger = logging.getLogger(__name__)

DEFAULT_TARGET_TOPIC = "shapeit/pins/target"
DEFAULT_ACTUAL_TOPIC = "shapeit/pins/actual"
PRESS_THRESHOLD = 10.0


@dataclass
class HardwareBridge:
    client: MqttClient
    target_topic: str = DEFAULT_TARGET_TOPIC
    actual_topic: str = DEFAULT_ACTUAL_TOPIC
    press_threshold: float = PRESS_THRESHOLD
    reconnect_backoff: float = 0.5
    max_backoff: float = 30.0
    last_published: bytes | None = None
    last_actuals: tuple[float, ...] | None = None
    pending_frame: bytes | None = None

    def __post_init__(self) -> None:
        self._lock = threading.Lock()
        self._backoff = self.reconnect_backoff

    def start(self, scene_provider=None) -> None:
        self.client.on_message = lambda topic, payload: self._dispatch(
            topic, payload, scene_provider() if scene_provider else None
        )
        self.client.connect()
        self.client.subscribe(self.actual_topic)

    def _dispatch(self, topic: str, payload: bytes, scene: Scene | None) -> None:
        if topic == self.actual_topic and scene is not None:
            self.on_actual_heights(payload, scene)

    # ---- outbound ----

    def publish_targets(self, frame: HeightField) -> None:
        wire = encode_frame(frame)
        with self._lock:
            if not self.client.connected:
                self.pending_frame = wire  # latest-wins single-frame buffer
                self._try_reconnect()
                if not self.client.connected:
                    return
                self._flush_pending_locked()
                return
            try:
                self.client.publish(self.target_topic, wire)
                self.last_published = wire
                self._backoff = self.reconnect_backoff
            except MqttError:
                self.pending_frame = wire

    def _flush_pending_locked(self) -> None:
        if self.pending_frame is None:
            return
        try:
            self.client.publish(self.target_topic, self.pending_frame)
            self.last_published = self.pending_frame
            self.pending_frame = None
            self._backoff = self.reconnect_backoff
        except MqttError:
            pass

    def _try_reconnect(self) -> None:
        try:
            self.client.connect()
            self.client.subscribe(self.actual_topic)
        except (MqttError, OSError) as exc:
            logger.debug("reconnect failed: %s", exc)
            self._backoff = min(self._backoff * 2, self.max_backoff)

    # ---- inbound ----

    def on_actual_heights(self, frame: bytes, scene: Scene) -> None:
        if len(frame) != FRAME_BYTES:
            logger.warning(
                "dropping actual-heights frame with bad length %d (want %d)",
                len(frame),
                FRAME_BYTES,
            )
            return
        actuals = tuple(float(b) for b in frame)
        self.last_actuals = actuals
        targets = self.last_published
        for i in range(PIN_COUNT):
            if not scene.buffer.is_button[i]:
                continue
            target = float(targets[i]) if targets is not None else scene.buffer.heights[i]
            scene.buffer.is_pressing[i] = actuals[i] < target - self.press_threshold
