"""Residual formation, DC shift, and the two lossless residual coders.

The residual between an original image ``P`` and its decoded base layer
``P'`` is ``R = P - P'`` per sample. Lossless image coders generally expect
non-negative samples, so ``R`` is shifted by the DC offset ``2**N - 1``
(``N`` = source bit depth), mapping its full range onto
``[0, 2**(N+1) - 2]``, which fits in ``N + 1`` bits.

Two interchangeable coders handle the shifted planes:

* ``PREDICTIVE``: raster-scan median-edge-detector prediction with
  adaptively parameterized Golomb-Rice coding. Low complexity, strictly
  sequential per plane.
* ``WAVELET``: reversible 5/3 decomposition (three levels in both
  directions), every band at step 1, per-band Golomb-Rice coding with an
  exhaustively chosen parameter.

Both are bijections on their domain, and both are deterministic functions of
the input plane. The predictive coder's fixed conventions (any deterministic
choice works, but streams are only portable if one is pinned):

* first sample predicted by ``2**(depth-1) - 1``; the rest of the first row
  by the west neighbor; the rest of the first column by the north neighbor;
* the Golomb-Rice parameter is the MSB position of the running mean of the
  zigzag-mapped prediction errors, recomputed before every sample, with the
  accumulator and count halved once the count reaches 64.

Extension payload layout (big-endian)::

    "XSE1" | coder u8 | depth u8 | per component: byte length u32 + payload
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from enum import IntEnum
from typing import Sequence, Union

import numpy as np

from . import dwt, rice
from .bitio import BitReader, BitWriter
from .errors import BitstreamError, CodecError
from .image import PlanarImage

EXT_MAGIC = b"XSE1"
_EXT_FIXED = struct.Struct(">4sBB")
_EXT_LEN = struct.Struct(">I")

_WAVELET_LEVELS = 3
_WAVELET_RECORD = struct.Struct(">BI")


class LosslessCoderId(IntEnum):
    PREDICTIVE = 1
    WAVELET = 2


@dataclass(frozen=True, eq=False)
class ResidualPlane:
    """Signed residual plane (unshifted) or its non-negative shifted form.

    ``depth`` is ``N + 1`` for residuals of an N-bit image. Unshifted samples
    lie in ``[-(2**N - 1), 2**N - 1]``; shifted samples in
    ``[0, 2**(N+1) - 2]``.
    """

    width: int
    height: int
    depth: int
    shifted: bool
    samples: np.ndarray

    def __post_init__(self) -> None:
        if self.samples.shape != (self.height, self.width):
            raise CodecError("residual samples do not match declared dimensions")
        if not 2 <= self.depth <= 17:
            raise CodecError(f"bad residual depth {self.depth}")
        if self.samples.size:
            lo = int(self.samples.min())
            hi = int(self.samples.max())
            offset = (1 << (self.depth - 1)) - 1
            if self.shifted:
                if lo < 0 or hi > 2 * offset:
                    raise CodecError("shifted residual out of range")
            else:
                if lo < -offset or hi > offset:
                    raise CodecError("residual out of range")

    @classmethod
    def from_samples(
        cls, samples: np.ndarray, depth: int, shifted: bool
    ) -> "ResidualPlane":
        arr = np.ascontiguousarray(np.asarray(samples, dtype=np.int64))
        arr.flags.writeable = False
        height, width = arr.shape
        return cls(width=width, height=height, depth=depth, shifted=shifted, samples=arr)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ResidualPlane):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and self.depth == other.depth
            and self.shifted == other.shifted
            and np.array_equal(self.samples, other.samples)
        )


def compute_residual(original: PlanarImage, base: PlanarImage) -> list[ResidualPlane]:
    """Per-component difference ``original - base``, unshifted."""
    if not original.same_shape(base):
        raise CodecError("residual requires images of identical shape and depth")
    depth = original.bit_depth + 1
    return [
        ResidualPlane.from_samples(po - pb, depth, shifted=False)
        for po, pb in zip(original.planes, base.planes)
    ]


def dc_shift(residual: ResidualPlane) -> ResidualPlane:
    """Add the DC offset ``2**N - 1`` so every sample is non-negative."""
    if residual.shifted:
        raise CodecError("residual plane is already shifted")
    offset = (1 << (residual.depth - 1)) - 1
    return ResidualPlane.from_samples(
        residual.samples + offset, residual.depth, shifted=True
    )


def dc_unshift(residual: ResidualPlane) -> ResidualPlane:
    """Exact inverse of :func:`dc_shift`."""
    if not residual.shifted:
        raise CodecError("residual plane is not shifted")
    offset = (1 << (residual.depth - 1)) - 1
    return ResidualPlane.from_samples(
        residual.samples - offset, residual.depth, shifted=False
    )


def med_predict(a: int, b: int, c: int) -> int:
    """Median edge detector: gradient prediction clamped at detected edges."""
    lo, hi = (a, b) if a <= b else (b, a)
    if c >= hi:
        return lo
    if c <= lo:
        return hi
    return a + b - c


def _med_array(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    return np.where(c >= hi, lo, np.where(c <= lo, hi, a + b - c))


PlaneLike = Union[ResidualPlane, np.ndarray]


def _plane_samples(plane: PlaneLike, depth: int) -> np.ndarray:
    if isinstance(plane, ResidualPlane):
        if not plane.shifted:
            raise CodecError("lossless coders expect the shifted representation")
        if plane.depth != depth:
            raise CodecError(
                f"plane depth {plane.depth} does not match coder depth {depth}"
            )
        samples = plane.samples
    else:
        samples = np.asarray(plane, dtype=np.int64)
    if samples.ndim != 2 or samples.size == 0:
        raise CodecError("coder input must be a non-empty 2-D plane")
    if not 2 <= depth <= 17:
        raise CodecError(f"bad coder depth {depth}")
    if int(samples.min()) < 0 or int(samples.max()) > (1 << depth) - 1:
        raise CodecError(f"samples do not fit in {depth} bits")
    return samples


class _RiceAdapter:
    """Running-mean Golomb-Rice parameter tracker shared by both directions."""

    __slots__ = ("acc", "count")

    def __init__(self) -> None:
        self.acc = 0
        self.count = 0

    def k(self) -> int:
        if not self.count:
            return 0
        mean = self.acc // self.count
        if mean <= 0:
            return 0
        return min(mean.bit_length() - 1, rice.MAX_RICE_K)

    def update(self, mapped: int) -> None:
        self.acc += mapped
        self.count += 1
        if self.count == 64:
            self.acc >>= 1
            self.count >>= 1


def _predictions(samples: np.ndarray, depth: int) -> np.ndarray:
    height, width = samples.shape
    pred = np.empty_like(samples)
    pred[0, 0] = (1 << (depth - 1)) - 1
    if width > 1:
        pred[0, 1:] = samples[0, :-1]
    if height > 1:
        pred[1:, 0] = samples[:-1, 0]
    if height > 1 and width > 1:
        pred[1:, 1:] = _med_array(
            samples[1:, :-1], samples[:-1, 1:], samples[:-1, :-1]
        )
    return pred


def encode_predictive(plane: PlaneLike, depth: int) -> bytes:
    """MED-predicted, adaptively Rice-coded raster scan of one plane."""
    samples = _plane_samples(plane, depth)
    errors = samples - _predictions(samples, depth)
    mapped = rice.zigzag_map(errors).ravel()

    adapter = _RiceAdapter()
    k_list = []
    for m in mapped.tolist():
        k_list.append(adapter.k())
        adapter.update(m)
    ks = np.asarray(k_list, dtype=np.int64)

    writer = BitWriter()
    writer.write_bit_array(rice.pack_codes(mapped, ks))
    writer.align()
    return writer.tobytes()


def decode_predictive(data: bytes, width: int, height: int, depth: int) -> np.ndarray:
    """Exact inverse of :func:`encode_predictive`."""
    if width < 1 or height < 1:
        raise CodecError("empty plane dimensions")
    count = width * height
    bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8))
    nbits = bits.size
    zeros = np.flatnonzero(bits == 0).tolist()
    nzeros = len(zeros)
    lookup = rice.remainder_lookup(bits).tolist()

    adapter = _RiceAdapter()
    mapped = []
    pos = 0
    zi = 0
    for _ in range(count):
        k = adapter.k()
        while zi < nzeros and zeros[zi] < pos:
            zi += 1
        if zi >= nzeros:
            raise BitstreamError("predictive stream truncated")
        t = zeros[zi]
        zi += 1
        end = t + 1 + k
        if end > nbits:
            raise BitstreamError("predictive stream truncated")
        q = t - pos
        if k:
            m = (q << k) | (lookup[t + 1] >> (rice.MAX_RICE_K - k))
        else:
            m = q
        mapped.append(m)
        adapter.update(m)
        pos = end

    if nbits - pos >= 8 or np.any(bits[pos:]):
        raise BitstreamError("trailing data after predictive stream")
    errors = rice.zigzag_unmap(np.asarray(mapped, dtype=np.int64)).reshape(
        height, width
    )
    samples = _unpredict(errors, depth)
    if int(samples.min()) < 0 or int(samples.max()) > (1 << depth) - 1:
        raise BitstreamError("decoded samples out of range")
    return samples


def _unpredict(errors: np.ndarray, depth: int) -> np.ndarray:
    height, width = errors.shape
    first = (1 << (depth - 1)) - 1
    out = np.empty((height, width), dtype=np.int64)
    out[0] = np.cumsum(errors[0]) + first
    out[:, 0] = np.cumsum(errors[:, 0]) + first
    for y in range(1, height):
        prev = out[y - 1].tolist()
        erow = errors[y].tolist()
        row = [int(out[y, 0])]
        for x in range(1, width):
            a = row[x - 1]
            b = prev[x]
            c = prev[x - 1]
            lo, hi = (a, b) if a <= b else (b, a)
            if c >= hi:
                p = lo
            elif c <= lo:
                p = hi
            else:
                p = a + b - c
            row.append(p + erow[x])
        out[y] = row
    return out


def encode_wavelet_lossless(plane: PlaneLike, depth: int) -> bytes:
    """Reversible 5/3 transform with per-band Golomb-Rice coding, step 1."""
    samples = _plane_samples(plane, depth)
    bands = dwt.decompose(samples, _WAVELET_LEVELS, _WAVELET_LEVELS)
    header = bytearray()
    writer = BitWriter()
    for band in bands:
        values = band.ravel()
        k = rice.choose_rice_k(values)
        bits = rice.encode_band(values, k)
        header += _WAVELET_RECORD.pack(k, bits.size)
        writer.write_bit_array(bits)
        writer.align()
    return bytes(header) + writer.tobytes()


def decode_wavelet_lossless(
    data: bytes, width: int, height: int, depth: int
) -> np.ndarray:
    """Exact inverse of :func:`encode_wavelet_lossless`."""
    if width < 1 or height < 1:
        raise CodecError("empty plane dimensions")
    layout = dwt.band_dimensions(width, height, _WAVELET_LEVELS, _WAVELET_LEVELS)
    header_size = _WAVELET_RECORD.size * len(layout)
    if len(data) < header_size:
        raise BitstreamError("wavelet payload truncated in band records")
    records = []
    declared = 0
    for i in range(len(layout)):
        k, nbits = _WAVELET_RECORD.unpack_from(data, i * _WAVELET_RECORD.size)
        if k > rice.MAX_RICE_K:
            raise BitstreamError(f"band declares rice k {k}")
        records.append((k, nbits))
        declared += (nbits + 7) // 8
    if header_size + declared != len(data):
        raise BitstreamError("declared band sizes do not match wavelet payload")

    reader = BitReader(data[header_size:])
    limit = 1 << (depth + 2 * _WAVELET_LEVELS + 1)
    bands = []
    for (name, bw, bh), (k, nbits) in zip(layout, records):
        count = bw * bh
        if count > nbits:
            raise BitstreamError(
                f"band {name} cannot hold {count} samples in {nbits} bits"
            )
        band_bits = reader.read_bit_array(nbits)
        pad = reader.read_bit_array((-nbits) % 8)
        if np.any(pad):
            raise BitstreamError("nonzero padding after band")
        values = rice.decode_band(band_bits, count, k)
        if count and int(np.abs(values).max()) > limit:
            raise BitstreamError("coefficient out of range")
        bands.append(values.reshape(bh, bw))
    samples = dwt.recompose(bands, width, height, _WAVELET_LEVELS, _WAVELET_LEVELS)
    if int(samples.min()) < 0 or int(samples.max()) > (1 << depth) - 1:
        raise BitstreamError("decoded samples out of range")
    return samples


_ENCODERS = {
    LosslessCoderId.PREDICTIVE: encode_predictive,
    LosslessCoderId.WAVELET: encode_wavelet_lossless,
}
_DECODERS = {
    LosslessCoderId.PREDICTIVE: decode_predictive,
    LosslessCoderId.WAVELET: decode_wavelet_lossless,
}


def encode_extension(
    planes: Sequence[np.ndarray], depth: int, coder: LosslessCoderId
) -> bytes:
    """Code planes independently and concatenate them in component order."""
    coder = LosslessCoderId(coder)
    encode = _ENCODERS[coder]
    out = bytearray(_EXT_FIXED.pack(EXT_MAGIC, int(coder), depth))
    for plane in planes:
        payload = encode(plane, depth)
        out += _EXT_LEN.pack(len(payload))
        out += payload
    return bytes(out)


def decode_extension(
    data: bytes, width: int, height: int, components: int
) -> tuple[list[np.ndarray], LosslessCoderId, int]:
    """Split and decode an extension payload; returns (planes, coder, depth)."""
    if len(data) < _EXT_FIXED.size:
        raise BitstreamError("extension payload shorter than its header")
    magic, coder_value, depth = _EXT_FIXED.unpack_from(data)
    if magic != EXT_MAGIC:
        raise BitstreamError(f"bad extension magic {magic!r}")
    try:
        coder = LosslessCoderId(coder_value)
    except ValueError:
        raise BitstreamError(f"unknown lossless coder id {coder_value}") from None
    if not 2 <= depth <= 17:
        raise BitstreamError(f"bad extension depth {depth}")
    decode = _DECODERS[coder]
    planes = []
    pos = _EXT_FIXED.size
    for _ in range(components):
        if pos + _EXT_LEN.size > len(data):
            raise BitstreamError("extension payload truncated in component table")
        (length,) = _EXT_LEN.unpack_from(data, pos)
        pos += _EXT_LEN.size
        if pos + length > len(data):
            raise BitstreamError("extension component payload truncated")
        planes.append(decode(data[pos : pos + length], width, height, depth))
        pos += length
    if pos != len(data):
        raise BitstreamError("trailing bytes after extension payload")
    return planes, coder, depth
