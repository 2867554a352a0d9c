"""MSB-first bit-level serialization shared by all coders.

Bulk data moves as numpy 0/1 arrays so entropy coders can assemble and
consume bits without per-bit Python overhead; scalar helpers cover small
header fields.
"""

from __future__ import annotations

import numpy as np

from .errors import BitstreamError


class BitWriter:
    """Accumulates bits MSB-first and packs them into bytes."""

    def __init__(self) -> None:
        self._chunks: list[np.ndarray] = []
        self._nbits = 0

    @property
    def bit_length(self) -> int:
        return self._nbits

    def write_bits(self, value: int, count: int) -> None:
        """Write the low ``count`` bits of ``value``, most significant first."""
        if count < 0 or (value >> count) != 0 or value < 0:
            raise ValueError(f"value {value} does not fit in {count} bits")
        if count == 0:
            return
        bits = np.empty(count, dtype=np.uint8)
        for i in range(count):
            bits[i] = (value >> (count - 1 - i)) & 1
        self.write_bit_array(bits)

    def write_bit_array(self, bits: np.ndarray) -> None:
        """Append an array of 0/1 values."""
        arr = np.asarray(bits, dtype=np.uint8)
        if arr.size:
            self._chunks.append(arr)
            self._nbits += arr.size

    def align(self) -> None:
        """Pad with zero bits to the next byte boundary."""
        pad = (-self._nbits) % 8
        if pad:
            self.write_bit_array(np.zeros(pad, dtype=np.uint8))

    def tobytes(self) -> bytes:
        if not self._chunks:
            return b""
        return np.packbits(np.concatenate(self._chunks)).tobytes()


class BitReader:
    """Reads bits MSB-first from a byte string."""

    def __init__(self, data: bytes) -> None:
        self._bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8))
        self._pos = 0

    @property
    def remaining(self) -> int:
        return self._bits.size - self._pos

    def read_bits(self, count: int) -> int:
        """Read ``count`` bits as an unsigned integer, most significant first."""
        if count > self.remaining:
            raise BitstreamError("bitstream truncated")
        value = 0
        for _ in range(count):
            value = (value << 1) | int(self._bits[self._pos])
            self._pos += 1
        return value

    def read_bit_array(self, count: int) -> np.ndarray:
        """Read ``count`` bits as a 0/1 array."""
        if count > self.remaining:
            raise BitstreamError("bitstream truncated")
        out = self._bits[self._pos : self._pos + count]
        self._pos += count
        return out

    def align(self) -> None:
        """Skip forward to the next byte boundary."""
        self._pos += (-self._pos) % 8
        if self._pos > self._bits.size:
            self._pos = self._bits.size
