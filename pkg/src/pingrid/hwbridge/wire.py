"""Binary frame codec for the hardware link.

A wire frame is 576 unsigned bytes, one per pin, row-major, each 0..100.
Quantization rounds half up, so the per-pin error is at most 0.5 units.
"""

from __future__ import annotations

import math

from ..core import MAX_HEIGHT, PIN_COUNT, HeightField
from ..errors import ValidationError

FRAME_BYTES = PIN_COUNT  # 576


def quantize_height(value: float) -> int:
    if value != value:  # NaN renders as fully retracted
        return 0
    clamped = min(MAX_HEIGHT, max(0.0, value))
    return int(math.floor(clamped + 0.5))


def encode_frame(field: HeightField) -> bytes:
    return bytes(quantize_height(h) for h in field.heights)


def decode_frame(frame: bytes) -> HeightField:
    if len(frame) != FRAME_BYTES:
        raise ValidationError(f"wire frame must be {FRAME_BYTES} bytes, got {len(frame)}")
    for b in frame:
        if b > 100:
            raise ValidationError(f"wire frame byte {b} exceeds 100")
    return HeightField(heights=tuple(float(b) for b in frame))
