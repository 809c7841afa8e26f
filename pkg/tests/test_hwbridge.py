from __future__ import annotations

import socket
import threading
import time

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pingrid.core import HeightField, ScriptArtifact, ScriptCategory, pin_index
from pingrid.data import canonical_trio
from pingrid.errors import ValidationError
from pingrid.hwbridge import (
    FRAME_BYTES,
    HardwareBridge,
    MqttClient,
    MqttError,
    decode_frame,
    encode_frame,
    quantize_height,
)
from pingrid.hwbridge.mqtt import (
    CONNACK,
    CONNECT,
    PINGREQ,
    PUBLISH,
    SUBACK,
    SUBSCRIBE,
    decode_publish,
    decode_varint,
    encode_connack,
    encode_publish,
    encode_suback,
    encode_varint,
    exact_reader,
    read_packet,
)
from pingrid.runtime import load_scene


class TestWireCodec:
    def test_zero_frame(self):
        frame = encode_frame(HeightField.zeros())
        assert frame == bytes(576)

    def test_round_half_up(self):
        assert quantize_height(25.4) == 25
        assert quantize_height(25.5) == 26
        assert quantize_height(0.0) == 0
        assert quantize_height(100.0) == 100
        assert quantize_height(float("nan")) == 0

    def test_round_trip_identity_on_quantized(self):
        heights = tuple(float(i % 101) for i in range(576))
        field = HeightField(heights=heights)
        assert decode_frame(encode_frame(field)) == field

    def test_wrong_length_rejected(self):
        with pytest.raises(ValidationError):
            decode_frame(bytes(575))

    def test_overheight_byte_rejected(self):
        with pytest.raises(ValidationError):
            decode_frame(bytes([101] * 576))

    @given(st.floats(min_value=0, max_value=100, allow_nan=False))
    def test_quantization_error_bounded(self, height):
        assert abs(height - quantize_height(height)) <= 0.5


class TestMqttCodec:
    @pytest.mark.parametrize("n", [0, 1, 127, 128, 16383, 16384, 2097151, 268435455])
    def test_varint_round_trip(self, n):
        encoded = encode_varint(n)
        pos = {"i": 0}

        def read(count: int) -> bytes:
            chunk = encoded[pos["i"] : pos["i"] + count]
            pos["i"] += count
            return chunk

        assert decode_varint(read) == n

    def test_publish_round_trip(self):
        raw = encode_publish("shapeit/pins/target", b"\x00\x32\x64")
        pos = {"i": 0}

        def read(count: int) -> bytes:
            chunk = raw[pos["i"] : pos["i"] + count]
            pos["i"] += count
            return chunk

        packet_type, flags, body = read_packet(read)
        assert packet_type == PUBLISH
        topic, payload = decode_publish(body)
        assert topic == "shapeit/pins/target"
        assert payload == b"\x00\x32\x64"


class BrokerSession:
    """One accepted client connection on an in-process socketpair."""

    def __init__(self):
        self.server_sock, self.client_sock = socket.socketpair()
        self.published: list[tuple[str, bytes]] = []
        self.subscribed: list[str] = []
        self.thread = threading.Thread(target=self._serve, daemon=True)
        self.thread.start()

    def _serve(self) -> None:
        try:
            read = exact_reader(self.server_sock)
            while True:
                packet_type, _flags, body = read_packet(read)
                if packet_type == CONNECT:
                    self.server_sock.sendall(encode_connack())
                elif packet_type == SUBSCRIBE:
                    packet_id = int.from_bytes(body[:2], "big")
                    topic_len = int.from_bytes(body[2:4], "big")
                    self.subscribed.append(body[4 : 4 + topic_len].decode())
                    self.server_sock.sendall(encode_suback(packet_id))
                elif packet_type == PUBLISH:
                    self.published.append(decode_publish(body))
        except (MqttError, OSError):
            pass

    def push(self, topic: str, payload: bytes) -> None:
        self.server_sock.sendall(encode_publish(topic, payload))

    def drop(self) -> None:
        # shutdown wakes the blocked reader threads on both ends; a bare
        # close() would leave them blocked forever
        try:
            self.server_sock.shutdown(socket.SHUT_RDWR)
        except OSError:
            pass
        self.server_sock.close()


class BrokerFactory:
    def __init__(self):
        self.sessions: list[BrokerSession] = []
        self.refuse = False

    def __call__(self, host: str, port: int) -> socket.socket:
        if self.refuse:
            raise ConnectionRefusedError("broker down")
        session = BrokerSession()
        self.sessions.append(session)
        return session.client_sock

    @property
    def current(self) -> BrokerSession:
        return self.sessions[-1]


def wait_until(predicate, timeout: float = 2.0) -> None:
    deadline = time.monotonic() + timeout
    while time.monotonic() < deadline:
        if predicate():
            return
        time.sleep(0.01)
    raise AssertionError("condition not reached in time")


@pytest.fixture
def broker_and_client():
    factory = BrokerFactory()
    client = MqttClient(broker_url="mqtt://localhost:1883", socket_factory=factory)
    return factory, client


class TestMqttClient:
    def test_connect_and_publish(self, broker_and_client):
        factory, client = broker_and_client
        client.connect()
        client.publish("t/a", b"payload")
        wait_until(lambda: factory.current.published)
        assert factory.current.published == [("t/a", b"payload")]

    def test_subscribe_and_receive(self, broker_and_client):
        factory, client = broker_and_client
        received: list[tuple[str, bytes]] = []
        client.on_message = lambda topic, payload: received.append((topic, payload))
        client.connect()
        client.subscribe("t/in")
        wait_until(lambda: factory.current.subscribed)
        factory.current.push("t/in", b"\x01\x02")
        wait_until(lambda: received)
        assert received == [("t/in", b"\x01\x02")]

    def test_publish_when_disconnected_raises(self, broker_and_client):
        _factory, client = broker_and_client
        with pytest.raises(MqttError):
            client.publish("t", b"x")


def square_scene():
    trio = canonical_trio()
    return load_scene(
        [
            ScriptArtifact(category=ScriptCategory.PRIMITIVE, message="", source=trio["primitive"]["code"]),
            ScriptArtifact(category=ScriptCategory.INTERACTION, message="", source=trio["interaction"]["code"]),
        ]
    )


class TestBridge:
    def make(self):
        factory = BrokerFactory()
        client = MqttClient(broker_url="mqtt://localhost:1883", socket_factory=factory)
        bridge = HardwareBridge(client=client)
        return factory, client, bridge

    def test_publish_targets_quantizes(self):
        factory, client, bridge = self.make()
        client.connect()
        heights = [0.0] * 576
        heights[0] = 25.4
        heights[1] = 25.5
        bridge.publish_targets(HeightField(heights=tuple(heights)))
        wait_until(lambda: factory.current.published)
        topic, payload = factory.current.published[0]
        assert topic == "shapeit/pins/target"
        assert payload[0] == 25
        assert payload[1] == 26
        assert len(payload) == FRAME_BYTES

    def test_disconnect_buffers_latest_frame_and_reconnects(self):
        factory, client, bridge = self.make()
        client.connect()
        first_session = factory.current
        first_session.drop()
        wait_until(lambda: not client.connected)

        factory.refuse = True
        f1 = [10.0] * 576
        f2 = [20.0] * 576
        bridge.publish_targets(HeightField(heights=tuple(f1)))
        bridge.publish_targets(HeightField(heights=tuple(f2)))
        assert bridge.pending_frame == encode_frame(HeightField(heights=tuple(f2)))

        factory.refuse = False
        bridge.publish_targets(HeightField(heights=tuple([30.0] * 576)))
        wait_until(lambda: len(factory.sessions) >= 2 and factory.current.published)
        # latest-wins: the 30-frame supersedes both buffered candidates
        payloads = [p for _t, p in factory.current.published]
        assert payloads == [bytes([30] * 576)]

    def test_press_detection(self):
        _factory, _client, bridge = self.make()
        scene = square_scene()
        right = pin_index(16, 20)
        # commanded target for the button pin is its rest height, 50
        bridge.last_published = encode_frame(scene.height_field())
        actual = bytearray(encode_frame(scene.height_field()))

        bridge.on_actual_heights(bytes(actual), scene)
        assert scene.buffer.is_pressing[right] is False  # 50 vs 50: no deviation

        actual[right] = 35
        bridge.on_actual_heights(bytes(actual), scene)
        assert scene.buffer.is_pressing[right] is True  # 35 < 50 - 10

        actual[right] = 41
        bridge.on_actual_heights(bytes(actual), scene)
        assert scene.buffer.is_pressing[right] is False  # 41 >= 50 - 10: hysteresis-free

    def test_wrong_length_frame_dropped(self):
        _factory, _client, bridge = self.make()
        scene = square_scene()
        right = pin_index(16, 20)
        scene.buffer.is_pressing[right] = True
        bridge.on_actual_heights(bytes(575), scene)
        assert scene.buffer.is_pressing[right] is True  # unchanged

    def test_non_button_pins_not_marked(self):
        _factory, _client, bridge = self.make()
        scene = square_scene()
        bridge.last_published = encode_frame(scene.height_field())
        bridge.on_actual_heights(bytes(576), scene)  # everything reads 0
        for i in range(576):
            if not scene.buffer.is_button[i]:
                assert scene.buffer.is_pressing[i] is False
