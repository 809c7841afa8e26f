"""Minimal MQTT 3.1.1 client: CONNECT, PUBLISH (QoS 0), SUBSCRIBE, PING.

The internal mirror carries no MQTT package, so the small slice of the
protocol this artifact needs is implemented here. QoS 0 only; no retained
messages, wills, or auth beyond an optional username/password.
"""

from __future__ import annotations

import socket
import threading
from dataclasses import dataclass, field
from typing import Callable
from urllib.parse import urlparse

from ..errors import PingridError

CONNECT = 1
CONNACK = 2
PUBLISH = 3
SUBSCRIBE = 8
SUBACK = 9
PINGREQ = 12
PINGRESP = 13
DISCONNECT = 14


class MqttError(PingridError):
    pass


# ---- wire encoding ----


def encode_varint(n: int) -> bytes:
    if n < 0 or n > 268_435_455:
        raise MqttError(f"remaining length {n} out of range")
    out = bytearray()
    while True:
        byte = n % 128
        n //= 128
        if n > 0:
            byte |= 0x80
        out.append(byte)
        if n == 0:
            return bytes(out)


def decode_varint(read: Callable[[int], bytes]) -> int:
    multiplier = 1
    value = 0
    for _ in range(4):
        byte = read(1)[0]
        value += (byte & 0x7F) * multiplier
        if not byte & 0x80:
            return value
        multiplier *= 128
    raise MqttError("malformed remaining length")


def _utf8(text: str) -> bytes:
    raw = text.encode("utf-8")
    return len(raw).to_bytes(2, "big") + raw


def _packet(packet_type: int, flags: int, body: bytes) -> bytes:
    return bytes([(packet_type << 4) | flags]) + encode_varint(len(body)) + body


def encode_connect(client_id: str, keepalive: int = 60) -> bytes:
    body = _utf8("MQTT") + bytes([4])  # protocol level 4 = 3.1.1
    body += bytes([0x02])  # clean session
    body += keepalive.to_bytes(2, "big")
    body += _utf8(client_id)
    return _packet(CONNECT, 0, body)


def encode_connack(accepted: bool = True) -> bytes:
    return _packet(CONNACK, 0, bytes([0, 0 if accepted else 5]))


def encode_publish(topic: str, payload: bytes) -> bytes:
    return _packet(PUBLISH, 0, _utf8(topic) + payload)


def decode_publish(body: bytes) -> tuple[str, bytes]:
    topic_len = int.from_bytes(body[:2], "big")
    topic = body[2 : 2 + topic_len].decode("utf-8")
    return topic, body[2 + topic_len :]


def encode_subscribe(packet_id: int, topic: str) -> bytes:
    body = packet_id.to_bytes(2, "big") + _utf8(topic) + bytes([0])  # QoS 0
    return _packet(SUBSCRIBE, 0x02, body)


def encode_suback(packet_id: int) -> bytes:
    return _packet(SUBACK, 0, packet_id.to_bytes(2, "big") + bytes([0]))


def encode_pingreq() -> bytes:
    return _packet(PINGREQ, 0, b"")


def encode_pingresp() -> bytes:
    return _packet(PINGRESP, 0, b"")


def encode_disconnect() -> bytes:
    return _packet(DISCONNECT, 0, b"")


def read_packet(read: Callable[[int], bytes]) -> tuple[int, int, bytes]:
    """(packet_type, flags, body) from a blocking exact-read callable."""
    header = read(1)[0]
    length = decode_varint(read)
    body = read(length) if length else b""
    return header >> 4, header & 0x0F, body


def exact_reader(sock: socket.socket) -> Callable[[int], bytes]:
    def read(n: int) -> bytes:
        chunks = bytearray()
        while len(chunks) < n:
            chunk = sock.recv(n - len(chunks))
            if not chunk:
                raise MqttError("connection closed")
            chunks.extend(chunk)
        return bytes(chunks)

    return read


# ---- client ----

SocketFactory = Callable[[str, int], socket.socket]


def _tcp_connect(host: str, port: int) -> socket.socket:
    return socket.create_connection((host, port), timeout=10.0)


@dataclass
class MqttClient:
    broker_url: str
    client_id: str = "pingrid"
    socket_factory: SocketFactory = _tcp_connect
    on_message: Callable[[str, bytes], None] | None = None
    _sock: socket.socket | None = None
    _subscriptions: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        self._lock = threading.Lock()
        self._packet_id = 0
        self._reader: threading.Thread | None = None
        self._closing = False

    @property
    def connected(self) -> bool:
        return self._sock is not None

    def connect(self) -> None:
        parsed = urlparse(self.broker_url)
        if parsed.scheme not in ("mqtt", "tcp", ""):
            raise MqttError(f"unsupported broker scheme {parsed.scheme!r}")
        host = parsed.hostname or "localhost"
        port = parsed.port or 1883
        sock = self.socket_factory(host, port)
        sock.sendall(encode_connect(self.client_id))
        read = exact_reader(sock)
        packet_type, _flags, body = read_packet(read)
        if packet_type != CONNACK or len(body) < 2 or body[1] != 0:
            sock.close()
            raise MqttError(f"broker refused connection (packet {packet_type}, body {body!r})")
        self._sock = sock
        self._closing = False
        for topic in self._subscriptions:
            self._send_subscribe(topic)
        self._reader = threading.Thread(target=self._read_loop, daemon=True)
        self._reader.start()

    def disconnect(self) -> None:
        self._closing = True
        with self._lock:
            if self._sock is not None:
                try:
                    self._sock.sendall(encode_disconnect())
                except OSError:
                    pass
                self._sock.close()
                self._sock = None

    def publish(self, topic: str, payload: bytes) -> None:
        with self._lock:
            if self._sock is None:
                raise MqttError("not connected")
            try:
                self._sock.sendall(encode_publish(topic, payload))
            except OSError as exc:
                self._drop_connection()
                raise MqttError(f"publish failed: {exc}") from None

    def subscribe(self, topic: str) -> None:
        if topic not in self._subscriptions:
            self._subscriptions.append(topic)
        if self._sock is not None:
            self._send_subscribe(topic)

    def _send_subscribe(self, topic: str) -> None:
        with self._lock:
            if self._sock is None:
                raise MqttError("not connected")
            self._packet_id = (self._packet_id % 0xFFFF) + 1
            try:
                self._sock.sendall(encode_subscribe(self._packet_id, topic))
            except OSError as exc:
                self._drop_connection()
                raise MqttError(f"subscribe failed: {exc}") from None

    def _drop_connection(self) -> None:
        if self._sock is not None:
            try:
                self._sock.close()
            except OSError:
                pass
            self._sock = None

    def _read_loop(self) -> None:
        sock = self._sock
        if sock is None:
            return
        read = exact_reader(sock)
        try:
            while True:
                packet_type, _flags, body = read_packet(read)
                if packet_type == PUBLISH and self.on_message is not None:
                    topic, payload = decode_publish(body)
                    self.on_message(topic, payload)
                elif packet_type == PINGREQ:
                    with self._lock:
                        if self._sock is not None:
                            self._sock.sendall(encode_pingresp())
                # SUBACK/PINGRESP need no action at QoS 0
        except (MqttError, OSError):
            if not self._closing:
                with self._lock:
                    if self._sock is sock:
                        self._sock = None
