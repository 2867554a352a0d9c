"""Two-layer encode/decode composition and the rate sweep behind the bench.

The encoder always reconstructs the base image by decoding its own base
payload, never by reusing transform-domain state, so the encoder-side and
decoder-side reconstructions are identical by construction. That identity is
what makes the residual round trip exact.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import container
from .base import BaseConfig, decode_base, encode_base_detailed
from .container import ContainerMeta, demux, mux
from .errors import CodecError, ContainerError
from .image import INFINITE, PlanarImage, bits_per_pixel, measure
from .residual import (
    LosslessCoderId,
    compute_residual,
    dc_shift,
    decode_extension,
    encode_extension,
)


@dataclass(frozen=True)
class EncodeDetails:
    """Byproducts of a two-layer encode, for benches and CLI summaries."""

    file_bytes: bytes
    base_bytes: bytes
    ext_bytes: bytes
    base_image: PlanarImage | None
    overshoot: bool


@dataclass(frozen=True)
class DecodeResult:
    """Decoded image plus what the container could promise about it."""

    image: PlanarImage
    lossless: bool
    has_base: bool
    has_extension: bool


def encode_two_layer_detailed(
    image: PlanarImage,
    base_config: BaseConfig | None,
    coder: LosslessCoderId = LosslessCoderId.PREDICTIVE,
) -> EncodeDetails:
    coder = LosslessCoderId(coder)
    if base_config is None:
        base_payload = b""
        base_image = None
        overshoot = False
        planes: Sequence[np.ndarray] = image.planes
        depth = image.bit_depth
    else:
        result = encode_base_detailed(image, base_config)
        base_payload = result.payload
        overshoot = result.overshoot
        base_image = decode_base(base_payload)
        shifted = [dc_shift(r) for r in compute_residual(image, base_image)]
        planes = [r.samples for r in shifted]
        depth = image.bit_depth + 1
    ext_payload = encode_extension(planes, depth, coder)
    meta = ContainerMeta(
        width=image.width,
        height=image.height,
        components=image.components,
        bit_depth=image.bit_depth,
        coder_id=int(coder),
    )
    return EncodeDetails(
        file_bytes=mux(base_payload, ext_payload, meta),
        base_bytes=base_payload,
        ext_bytes=ext_payload,
        base_image=base_image,
        overshoot=overshoot,
    )


def encode_two_layer(
    image: PlanarImage,
    base_config: BaseConfig | None,
    coder: LosslessCoderId = LosslessCoderId.PREDICTIVE,
) -> bytes:
    """Encode a losslessly reconstructible two-layer file.

    With ``base_config=None`` no base layer is written and the image itself
    goes to the lossless coder at its native depth.
    """
    return encode_two_layer_detailed(image, base_config, coder).file_bytes


def decode_two_layer(data: bytes) -> DecodeResult:
    """Reconstruct the original image (bit-exact when an extension is present)."""
    base_payload, ext_payload, meta = demux(data)
    if not base_payload and not ext_payload:
        raise ContainerError("container has neither base nor extension layer")

    base_image: PlanarImage | None = None
    if base_payload:
        base_image = decode_base(base_payload)
        container.check_base_matches(meta, base_image)

    if not ext_payload:
        return DecodeResult(
            image=base_image, lossless=False, has_base=True, has_extension=False
        )

    planes, coder, depth = decode_extension(
        ext_payload, meta.width, meta.height, meta.components
    )
    if int(coder) != meta.coder_id:
        raise ContainerError("extension coder disagrees with container header")

    if base_image is None:
        if depth != meta.bit_depth:
            raise ContainerError(
                f"base-less extension depth {depth} does not match "
                f"image depth {meta.bit_depth}"
            )
        image = PlanarImage.from_planes(planes, meta.bit_depth)
        return DecodeResult(
            image=image, lossless=True, has_base=False, has_extension=True
        )

    if depth != meta.bit_depth + 1:
        raise ContainerError(
            f"extension depth {depth} does not match residual depth "
            f"{meta.bit_depth + 1}"
        )
    offset = (1 << meta.bit_depth) - 1
    out_planes = []
    for shifted, base_plane in zip(planes, base_image.planes):
        restored = base_plane + (shifted - offset)
        if restored.size and (
            int(restored.min()) < 0 or int(restored.max()) > offset
        ):
            raise CodecError("reconstructed samples out of range")
        out_planes.append(restored)
    image = PlanarImage.from_planes(out_planes, meta.bit_depth)
    return DecodeResult(image=image, lossless=True, has_base=True, has_extension=True)


@dataclass(frozen=True)
class SweepRow:
    """One (coder, base target) point of the rate sweep."""

    coder: str
    target_bpp: float
    base_bpp: float
    base_psnr: float | None
    ext_bpp: float
    overhead_bpp: float
    total_bpp: float
    lossless: bool


CSV_COLUMNS = (
    "coder",
    "target_bpp",
    "base_bpp",
    "base_psnr",
    "ext_bpp",
    "overhead_bpp",
    "total_bpp",
    "lossless",
)


def bench_sweep(
    image: PlanarImage,
    grid: Sequence[float],
    coders: Sequence[LosslessCoderId] = (
        LosslessCoderId.PREDICTIVE,
        LosslessCoderId.WAVELET,
    ),
    levels_h: int = 5,
    levels_v: int = 2,
) -> list[SweepRow]:
    """Measure every (target bpp, coder) point; target 0 means no base layer.

    The zero grid point is required so every sweep contains the plain
    lossless-coding baseline against which the two-layer totals are read.
    """
    if not grid:
        raise CodecError("bench grid must not be empty")
    if not any(t == 0 for t in grid):
        raise CodecError("bench grid must include the no-base point 0")
    if any(t < 0 for t in grid):
        raise CodecError("bench grid targets cannot be negative")

    rows = []
    for coder in sorted(LosslessCoderId(c) for c in set(coders)):
        for target in sorted(set(float(t) for t in grid)):
            if target == 0:
                config = None
            else:
                config = BaseConfig(
                    levels_h=levels_h, levels_v=levels_v, target_bpp=target
                )
            details = encode_two_layer_detailed(image, config, coder)
            decoded = decode_two_layer(details.file_bytes)
            if details.base_image is not None:
                base = measure(image, details.base_image, len(details.base_bytes))
                base_bpp, base_psnr = base.bpp, base.psnr_db
            else:
                base_bpp, base_psnr = 0.0, None
            rows.append(
                SweepRow(
                    coder=coder.name.lower(),
                    target_bpp=target,
                    base_bpp=base_bpp,
                    base_psnr=base_psnr,
                    ext_bpp=bits_per_pixel(
                        len(details.ext_bytes), image.width, image.height
                    ),
                    overhead_bpp=bits_per_pixel(
                        container.HEADER_SIZE, image.width, image.height
                    ),
                    total_bpp=bits_per_pixel(
                        len(details.file_bytes), image.width, image.height
                    ),
                    lossless=decoded.lossless and decoded.image == image,
                )
            )
    return rows


def _fmt(value: float | None) -> str:
    if value is None:
        return ""
    if value == INFINITE:
        return "inf"
    return f"{value:.4f}"


def rows_to_csv(rows: Sequence[SweepRow]) -> str:
    """Render sweep rows as CSV with a header and 4-decimal floats."""
    out = io.StringIO()
    out.write(",".join(CSV_COLUMNS) + "\n")
    for row in rows:
        out.write(
            ",".join(
                (
                    row.coder,
                    _fmt(row.target_bpp),
                    _fmt(row.base_bpp),
                    _fmt(row.base_psnr),
                    _fmt(row.ext_bpp),
                    _fmt(row.overhead_bpp),
                    _fmt(row.total_bpp),
                    "true" if row.lossless else "false",
                )
            )
            + "\n"
        )
    return out.getvalue()
