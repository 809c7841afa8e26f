from .bridge import (
    DEFAULT_ACTUAL_TOPIC,
    DEFAULT_TARGET_TOPIC,
    PRESS_THRESHOLD,
    HardwareBridge,
)
from .mqtt import MqttClient, MqttError
from .wire import FRAME_BYTES, decode_frame, encode_frame, quantize_height

__all__ = [
    "DEFAULT_ACTUAL_TOPIC",
    "DEFAULT_TARGET_TOPIC",
    "FRAME_BYTES",
    "PRESS_THRESHOLD",
    "HardwareBridge",
    "MqttClient",
    "MqttError",
    "decode_frame",
    "encode_frame",
    "quantize_height",
]
