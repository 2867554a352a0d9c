"""Layered container: one file, two independently decodable substreams.

Layout (big-endian, 34-byte header)::

    "TLXS" | version u8 | components u8 | bit_depth u8 | coder_id u8 |
    width u32 | height u32 | base_len u32 | ext_len u32 | crc32 u32 |
    reserved 6 bytes | base payload | extension payload

The CRC-32 covers the whole header with the checksum field zeroed, so any
flipped header byte is detected. Payloads are not checksummed; corruption
there surfaces as decode errors. Either layer may be empty: a base-only file
is a plain lossy stream, a base-less file is a pure losslessly coded image.
``coder_id`` is 0 when no extension is present.
"""

from __future__ import annotations

import struct
import zlib
from dataclasses import dataclass

from .base import decode_base
from .errors import (
    BadMagicError,
    ChecksumError,
    ContainerError,
    LengthMismatchError,
    MissingLayerError,
)
from .image import PlanarImage

MAGIC = b"TLXS"
VERSION = 1
_HEADER = struct.Struct(">4sBBBBIIIII6s")
HEADER_SIZE = _HEADER.size
_CRC_OFFSET = 24

CODER_NONE = 0


@dataclass(frozen=True)
class ContainerMeta:
    """Image-level facts the container declares about its payloads."""

    width: int
    height: int
    components: int
    bit_depth: int
    coder_id: int

    def __post_init__(self) -> None:
        if self.components not in (1, 3):
            raise ContainerError(f"components must be 1 or 3, got {self.components}")
        if not 8 <= self.bit_depth <= 16:
            raise ContainerError(f"bit depth must be in 8..16, got {self.bit_depth}")
        if not 1 <= self.width <= 0xFFFFFFFF or not 1 <= self.height <= 0xFFFFFFFF:
            raise ContainerError(f"bad dimensions {self.width}x{self.height}")
        if not 0 <= self.coder_id <= 255:
            raise ContainerError(f"bad coder id {self.coder_id}")


def _pack_header(meta: ContainerMeta, base_len: int, ext_len: int) -> bytes:
    header = bytearray(
        _HEADER.pack(
            MAGIC,
            VERSION,
            meta.components,
            meta.bit_depth,
            meta.coder_id,
            meta.width,
            meta.height,
            base_len,
            ext_len,
            0,
            b"\x00" * 6,
        )
    )
    crc = zlib.crc32(bytes(header))
    header[_CRC_OFFSET : _CRC_OFFSET + 4] = struct.pack(">I", crc)
    return bytes(header)


def mux(base: bytes, ext: bytes, meta: ContainerMeta) -> bytes:
    """Assemble a container; ``demux(mux(b, e, m)) == (b, e, m)`` byte-exactly."""
    if len(base) > 0xFFFFFFFF or len(ext) > 0xFFFFFFFF:
        raise ContainerError("payload too large for a u32 length field")
    if not ext and meta.coder_id != CODER_NONE:
        raise ContainerError("coder id set but no extension payload present")
    if ext and meta.coder_id == CODER_NONE:
        raise ContainerError("extension payload present but no coder id set")
    return _pack_header(meta, len(base), len(ext)) + base + ext


def demux(data: bytes) -> tuple[bytes, bytes, ContainerMeta]:
    """Split a container into (base, extension, meta), validating the header."""
    if len(data) < HEADER_SIZE:
        raise LengthMismatchError(
            f"file of {len(data)} bytes is shorter than the {HEADER_SIZE}-byte header"
        )
    (
        magic,
        version,
        components,
        bit_depth,
        coder_id,
        width,
        height,
        base_len,
        ext_len,
        crc,
        _reserved,
    ) = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise BadMagicError(f"bad container magic {magic!r}")
    zeroed = bytearray(data[:HEADER_SIZE])
    zeroed[_CRC_OFFSET : _CRC_OFFSET + 4] = b"\x00\x00\x00\x00"
    if zlib.crc32(bytes(zeroed)) != crc:
        raise ChecksumError("container header checksum mismatch")
    if version != VERSION:
        raise ContainerError(f"unsupported container version {version}")
    if HEADER_SIZE + base_len + ext_len != len(data):
        raise LengthMismatchError(
            f"header declares {HEADER_SIZE + base_len + ext_len} bytes, "
            f"file has {len(data)}"
        )
    meta = ContainerMeta(
        width=width,
        height=height,
        components=components,
        bit_depth=bit_depth,
        coder_id=coder_id,
    )
    base = data[HEADER_SIZE : HEADER_SIZE + base_len]
    ext = data[HEADER_SIZE + base_len :]
    return base, ext, meta


def check_base_matches(meta: ContainerMeta, image: PlanarImage) -> None:
    """Reject containers whose base payload disagrees with the outer header."""
    if (
        image.width != meta.width
        or image.height != meta.height
        or image.components != meta.components
        or image.bit_depth != meta.bit_depth
    ):
        raise ContainerError("base payload header disagrees with container header")


def decode_base_only(data: bytes) -> PlanarImage:
    """Decode just the base layer, ignoring the extension entirely."""
    base, _ext, meta = demux(data)
    if not base:
        raise MissingLayerError("file has no base layer")
    image = decode_base(base)
    check_base_matches(meta, image)
    return image
