"""Self-contained low-latency lossy base codec.

The profile is deliberately simple: a horizontal-dominant 5/3 decomposition
(vertical splitting capped at two levels so only a few lines of context are
ever needed), a dead-zone scalar quantizer with midpoint reconstruction, and
per-band Golomb-Rice coding with an exhaustively chosen parameter. A bisection
rate controller drives a single global quantizer scale to a target bit rate.
With every step at 1 the whole path is lossless because the transform is
reversible.

Payload layout (big-endian)::

    "XSB1" | width u32 | height u32 | components u8 | bit_depth u8 |
    (levels_h << 4 | levels_v) u8 |
    per coded band: step u16, rice k u8, coded length in bits u32 |
    per coded band: entropy bits, byte-aligned, zero-padded

Bands are ordered component-major, canonical band order within each
component (see :mod:`tlxs.dwt`). A declared coded length of 0 means every
quantized index in that band is zero and no entropy bits follow; without
this, coarse streams could never drop below one bit per coefficient and
sub-bpp rate targets would be unreachable. The payload is a pure function
of ``(image, config)``.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from . import dwt, rice
from .bitio import BitReader, BitWriter
from .errors import BitstreamError, CodecError
from .image import PlanarImage

MAGIC = b"XSB1"
_FIXED = struct.Struct(">4sIIBBB")
_RECORD = struct.Struct(">HBI")

MAX_SCALE = 65536.0
MAX_STEP = 65535
MAX_PROBES = 20

LOSSLESS_BASE = None
"""Sentinel target meaning quantization step 1 everywhere."""


@dataclass(frozen=True)
class BaseConfig:
    """Base-layer parameters.

    ``target_bpp`` is the rate target in bits per pixel, or
    :data:`LOSSLESS_BASE` for an unquantized (step 1) stream.
    """

    levels_h: int = 5
    levels_v: int = 2
    target_bpp: float | None = 2.0
    rate_tolerance: float = 0.02

    def __post_init__(self) -> None:
        if not 1 <= self.levels_h <= 6:
            raise CodecError(f"levels_h must be in 1..6, got {self.levels_h}")
        if not 0 <= self.levels_v <= 2:
            raise CodecError(f"levels_v must be in 0..2, got {self.levels_v}")
        if self.levels_v > self.levels_h:
            raise CodecError("levels_v cannot exceed levels_h")
        if self.target_bpp is not None and not self.target_bpp > 0:
            raise CodecError("target_bpp must be positive or LOSSLESS_BASE")
        if self.rate_tolerance < 0:
            raise CodecError("rate_tolerance cannot be negative")


class BandRecord(NamedTuple):
    """One coded band as described in the payload header."""

    name: str
    component: int
    width: int
    height: int
    step: int
    k: int
    bits: int


BandLayout = tuple[BandRecord, ...]


@dataclass(frozen=True)
class BaseStreamInfo:
    """Everything the payload header declares, without touching sample data."""

    width: int
    height: int
    components: int
    bit_depth: int
    levels_h: int
    levels_v: int
    records: BandLayout
    data_offset: int


@dataclass(frozen=True)
class BaseEncodeResult:
    payload: bytes
    steps: tuple[int, ...]
    overshoot: bool


def quantize_deadzone(coeff, step: int):
    """``sign(c) * floor(|c| / step)``; step 1 is the identity."""
    if step < 1:
        raise CodecError(f"quantizer step must be >= 1, got {step}")
    c = np.asarray(coeff, dtype=np.int64)
    return np.sign(c) * (np.abs(c) // step)


def dequantize_deadzone(index, step: int):
    """Midpoint reconstruction: 0 maps to 0, else ``sign * (|i|*step + step//2)``."""
    if step < 1:
        raise CodecError(f"quantizer step must be >= 1, got {step}")
    i = np.asarray(index, dtype=np.int64)
    return np.sign(i) * (np.abs(i) * step + step // 2)


def _band_gain(name: str) -> float:
    # Uniform weighting for now; kept as a hook so a perceptual profile only
    # has to touch this function and nothing downstream.
    return 1.0


def _step_for_scale(scale: float, gain: float) -> int:
    return max(1, min(MAX_STEP, math.floor(scale * gain + 0.5)))


def _decompose_image(image: PlanarImage, config: BaseConfig) -> list[list[np.ndarray]]:
    return [
        dwt.decompose(plane, config.levels_h, config.levels_v)
        for plane in image.planes
    ]


def _coded_sizes(
    comp_bands: list[list[np.ndarray]], steps: Sequence[int]
) -> tuple[list[list[tuple[int, int]]], int]:
    """Per-band (k, bits) plus total payload size in bytes for these steps."""
    n_records = len(comp_bands) * len(steps)
    total = _FIXED.size + _RECORD.size * n_records
    per_comp: list[list[tuple[int, int]]] = []
    for bands in comp_bands:
        entries = []
        for band, step in zip(bands, steps):
            indices = quantize_deadzone(band, step)
            if not indices.size or not indices.any():
                entries.append((0, 0))
                continue
            k = rice.choose_rice_k(indices)
            bits = rice.rice_bit_cost(indices, k)
            entries.append((k, bits))
            total += (bits + 7) // 8
        per_comp.append(entries)
    return per_comp, total


def rate_control(image: PlanarImage, config: BaseConfig) -> tuple[tuple[int, ...], bool]:
    """Per-band quantizer steps meeting the target rate, plus an overshoot flag."""
    if config.target_bpp is None:
        raise CodecError("rate control needs a positive bit rate target")
    comp_bands = _decompose_image(image, config)
    return _rate_control_on_bands(comp_bands, image, config)


def _rate_control_on_bands(
    comp_bands: list[list[np.ndarray]], image: PlanarImage, config: BaseConfig
) -> tuple[tuple[int, ...], bool]:
    layout = dwt.band_dimensions(
        image.width, image.height, config.levels_h, config.levels_v
    )
    gains = [_band_gain(name) for name, _, _ in layout]

    def steps_for(scale: float) -> tuple[int, ...]:
        return tuple(_step_for_scale(scale, g) for g in gains)

    def size_bits(scale: float) -> int:
        _, total = _coded_sizes(comp_bands, steps_for(scale))
        return 8 * total

    budget = config.target_bpp * (1.0 + config.rate_tolerance) * image.pixel_count
    lo, hi = 1.0, MAX_SCALE
    if size_bits(lo) <= budget:
        return steps_for(lo), False
    if size_bits(hi) > budget:
        return steps_for(hi), True
    # Invariant: size(lo) > budget >= size(hi). Two probes used above.
    for _ in range(MAX_PROBES - 2):
        mid = (lo + hi) / 2.0
        if size_bits(mid) <= budget:
            hi = mid
        else:
            lo = mid
    return steps_for(hi), False


def encode_base_detailed(image: PlanarImage, config: BaseConfig) -> BaseEncodeResult:
    """Encode and also report the chosen steps and the overshoot flag."""
    comp_bands = _decompose_image(image, config)
    layout = dwt.band_dimensions(
        image.width, image.height, config.levels_h, config.levels_v
    )
    if config.target_bpp is None:
        steps: tuple[int, ...] = tuple(1 for _ in layout)
        overshoot = False
    else:
        steps, overshoot = _rate_control_on_bands(comp_bands, image, config)

    writer = BitWriter()
    records = []
    for bands in comp_bands:
        for band, step in zip(bands, steps):
            indices = quantize_deadzone(band, step)
            if not indices.size or not indices.any():
                records.append((step, 0, 0))
                continue
            k = rice.choose_rice_k(indices)
            bits = rice.encode_band(indices, k)
            records.append((step, k, bits.size))
            writer.write_bit_array(bits)
            writer.align()

    header = bytearray(
        _FIXED.pack(
            MAGIC,
            image.width,
            image.height,
            image.components,
            image.bit_depth,
            (config.levels_h << 4) | config.levels_v,
        )
    )
    for step, k, nbits in records:
        header += _RECORD.pack(step, k, nbits)
    return BaseEncodeResult(bytes(header) + writer.tobytes(), steps, overshoot)


def encode_base(image: PlanarImage, config: BaseConfig) -> bytes:
    """Serialize the lossy base layer; decodable with no side information."""
    return encode_base_detailed(image, config).payload


def parse_base_header(payload: bytes) -> BaseStreamInfo:
    """Read and validate the payload header without decoding any samples."""
    if len(payload) < _FIXED.size:
        raise BitstreamError("base payload shorter than its fixed header")
    magic, width, height, components, bit_depth, levels = _FIXED.unpack_from(payload)
    if magic != MAGIC:
        raise BitstreamError(f"bad base payload magic {magic!r}")
    levels_h, levels_v = levels >> 4, levels & 0x0F
    if components not in (1, 3):
        raise BitstreamError(f"bad component count {components}")
    if not 8 <= bit_depth <= 16:
        raise BitstreamError(f"bad bit depth {bit_depth}")
    if width < 1 or height < 1:
        raise BitstreamError("empty image dimensions")
    if not 1 <= levels_h <= 6 or levels_v > min(2, levels_h):
        raise BitstreamError(f"bad decomposition levels {levels_h}/{levels_v}")
    layout = dwt.band_dimensions(width, height, levels_h, levels_v)
    n_records = components * len(layout)
    data_offset = _FIXED.size + _RECORD.size * n_records
    if len(payload) < data_offset:
        raise BitstreamError("base payload truncated inside band records")
    records = []
    declared = 0
    pos = _FIXED.size
    for comp in range(components):
        for name, bw, bh in layout:
            step, k, bits = _RECORD.unpack_from(payload, pos)
            pos += _RECORD.size
            if step < 1:
                raise BitstreamError(f"band {name} declares step 0")
            if k > rice.MAX_RICE_K:
                raise BitstreamError(f"band {name} declares rice k {k}")
            records.append(BandRecord(name, comp, bw, bh, step, k, bits))
            declared += (bits + 7) // 8
    if data_offset + declared != len(payload):
        raise BitstreamError(
            "declared band sizes do not match base payload length"
        )
    return BaseStreamInfo(
        width=width,
        height=height,
        components=components,
        bit_depth=bit_depth,
        levels_h=levels_h,
        levels_v=levels_v,
        records=tuple(records),
        data_offset=data_offset,
    )


def decode_base(payload: bytes) -> PlanarImage:
    """Reconstruct the base image; bit-exact mirror of the encoder's own view."""
    info = parse_base_header(payload)
    reader = BitReader(payload[info.data_offset :])
    limit = (1 << (info.bit_depth + info.levels_h + info.levels_v + 1)) + MAX_STEP
    bands_per_comp = len(info.records) // info.components
    planes = []
    for comp in range(info.components):
        bands = []
        for record in info.records[
            comp * bands_per_comp : (comp + 1) * bands_per_comp
        ]:
            count = record.width * record.height
            if record.bits == 0:
                # zero-length convention: every index in the band is zero
                indices = np.zeros(count, dtype=np.int64)
            else:
                if count > record.bits:
                    raise BitstreamError(
                        f"band {record.name} cannot hold {count} samples "
                        f"in {record.bits} bits"
                    )
                band_bits = reader.read_bit_array(record.bits)
                pad = reader.read_bit_array((-record.bits) % 8)
                if np.any(pad):
                    raise BitstreamError("nonzero padding after band")
                indices = rice.decode_band(band_bits, count, record.k)
            coeffs = dequantize_deadzone(indices, record.step)
            if count and int(np.abs(coeffs).max()) > limit:
                raise BitstreamError("coefficient out of range")
            bands.append(coeffs.reshape(record.height, record.width))
        plane = dwt.recompose(
            bands, info.width, info.height, info.levels_h, info.levels_v
        )
        np.clip(plane, 0, (1 << info.bit_depth) - 1, out=plane)
        planes.append(plane)
    return PlanarImage.from_planes(planes, info.bit_depth)
