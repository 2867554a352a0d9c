"""Reversible LeGall 5/3 lifting transform and the 2-D band decomposition.

One lifting pass over a line ``x`` of length ``n`` produces detail
coefficients ``d[i] = x[2i+1] - floor((x[2i] + x[2i+2]) / 2)`` followed by
smooth coefficients ``s[i] = x[2i] + floor((d[i-1] + d[i] + 2) / 4)``, with
out-of-range indices reflected symmetrically about the ends (whole-sample
extension). The transform is exactly invertible in integers for every length,
including odd and length-1 lines.

The 2-D decomposition is horizontal-dominant: ``levels_h`` horizontal stages
are applied to the running low band, and the first ``levels_v`` of those
stages split vertically as well. Bands are emitted coarsest first:

    L, then per stage from deepest to shallowest:
        2-D stage s:  HL{s}, LH{s}, HH{s}
        1-D stage s:  H{s}

where HL carries horizontal detail, LH vertical detail. A stage splits a
length ``n`` axis into ``ceil(n/2)`` low and ``floor(n/2)`` high samples, so
band dimensions tile the image exactly and nothing is padded.
"""

from __future__ import annotations

import numpy as np

from .errors import CodecError

Band = tuple[str, int, int]


def _split_rows(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Forward lifting along axis 1. Returns (low, high)."""
    n = a.shape[1]
    if n == 1:
        return a.copy(), a[:, :0].copy()
    even = a[:, 0::2]
    odd = a[:, 1::2]
    nh = odd.shape[1]
    left = even[:, :nh]
    if n % 2 == 0:
        # right neighbor of the last odd sample reflects to the last even one
        right = np.concatenate([even[:, 1:], even[:, -1:]], axis=1)
    else:
        right = even[:, 1 : nh + 1]
    d = odd - (left + right) // 2
    if n % 2 == 0:
        cur_d = d
        prev_d = np.concatenate([d[:, :1], d[:, :-1]], axis=1)
    else:
        # one more smooth sample than detail; both neighbors reflect at the end
        cur_d = np.concatenate([d, d[:, -1:]], axis=1)
        prev_d = np.concatenate([d[:, :1], d], axis=1)
    s = even + (prev_d + cur_d + 2) // 4
    return s, d


def _merge_rows(low: np.ndarray, high: np.ndarray) -> np.ndarray:
    """Inverse of :func:`_split_rows`."""
    nl = low.shape[1]
    nh = high.shape[1]
    if nh == 0:
        if nl != 1:
            raise CodecError("inconsistent band lengths for inverse transform")
        return low.copy()
    if nl not in (nh, nh + 1):
        raise CodecError("inconsistent band lengths for inverse transform")
    n = nl + nh
    if n % 2 == 0:
        cur_d = high
        prev_d = np.concatenate([high[:, :1], high[:, :-1]], axis=1)
    else:
        cur_d = np.concatenate([high, high[:, -1:]], axis=1)
        prev_d = np.concatenate([high[:, :1], high], axis=1)
    even = low - (prev_d + cur_d + 2) // 4
    left = even[:, :nh]
    if n % 2 == 0:
        right = np.concatenate([even[:, 1:], even[:, -1:]], axis=1)
    else:
        right = even[:, 1 : nh + 1]
    odd = high + (left + right) // 2
    out = np.empty((low.shape[0], n), dtype=np.int64)
    out[:, 0::2] = even
    out[:, 1::2] = odd
    return out


def _split_cols(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    low, high = _split_rows(np.ascontiguousarray(a.T))
    return low.T, high.T


def _merge_cols(low: np.ndarray, high: np.ndarray) -> np.ndarray:
    return _merge_rows(np.ascontiguousarray(low.T), np.ascontiguousarray(high.T)).T


def dwt_forward_53(line: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Forward one-level 5/3 transform of a 1-D integer line."""
    arr = np.asarray(line, dtype=np.int64)
    if arr.ndim != 1 or arr.size == 0:
        raise CodecError("transform input must be a non-empty 1-D line")
    low, high = _split_rows(arr[np.newaxis, :])
    return low[0], high[0]


def dwt_inverse_53(low: np.ndarray, high: np.ndarray) -> np.ndarray:
    """Exact integer inverse of :func:`dwt_forward_53`."""
    lo = np.asarray(low, dtype=np.int64)
    hi = np.asarray(high, dtype=np.int64)
    if lo.ndim != 1 or hi.ndim != 1:
        raise CodecError("band inputs must be 1-D")
    if lo.size == 0:
        raise CodecError("low band cannot be empty")
    return _merge_rows(lo[np.newaxis, :], hi[np.newaxis, :])[0]


def _validate_levels(levels_h: int, levels_v: int) -> None:
    if not 1 <= levels_h <= 6:
        raise CodecError(f"levels_h must be in 1..6, got {levels_h}")
    if not 0 <= levels_v <= levels_h:
        raise CodecError(f"levels_v must be in 0..levels_h, got {levels_v}")


def band_dimensions(
    width: int, height: int, levels_h: int, levels_v: int
) -> list[Band]:
    """Canonical band list ``(name, width, height)`` for a decomposition."""
    _validate_levels(levels_h, levels_v)
    stages: list[list[Band]] = []
    cw, ch = width, height
    for stage in range(1, levels_h + 1):
        lw, hw = (cw + 1) // 2, cw // 2
        if stage <= levels_v:
            lh, hh = (ch + 1) // 2, ch // 2
            stages.append(
                [
                    (f"HL{stage}", hw, lh),
                    (f"LH{stage}", lw, hh),
                    (f"HH{stage}", hw, hh),
                ]
            )
            cw, ch = lw, lh
        else:
            stages.append([(f"H{stage}", hw, ch)])
            cw = lw
    bands: list[Band] = [("L", cw, ch)]
    for stage_bands in reversed(stages):
        bands.extend(stage_bands)
    return bands


def decompose(
    plane: np.ndarray, levels_h: int, levels_v: int
) -> list[np.ndarray]:
    """Split a plane into coefficient bands in canonical order."""
    _validate_levels(levels_h, levels_v)
    current = np.asarray(plane, dtype=np.int64)
    if current.ndim != 2 or current.size == 0:
        raise CodecError("plane must be a non-empty 2-D array")
    stages: list[list[np.ndarray]] = []
    for stage in range(1, levels_h + 1):
        low_h, high_h = _split_rows(current)
        if stage <= levels_v:
            ll, lh = _split_cols(low_h)
            hl, hh = _split_cols(high_h)
            stages.append([hl, lh, hh])
            current = ll
        else:
            stages.append([high_h])
            current = low_h
    bands = [current]
    for stage_bands in reversed(stages):
        bands.extend(stage_bands)
    return bands


def recompose(
    bands: list[np.ndarray], width: int, height: int, levels_h: int, levels_v: int
) -> np.ndarray:
    """Exact inverse of :func:`decompose`."""
    layout = band_dimensions(width, height, levels_h, levels_v)
    if len(bands) != len(layout):
        raise CodecError(
            f"expected {len(layout)} bands, got {len(bands)}"
        )
    for arr, (name, bw, bh) in zip(bands, layout):
        if arr.shape != (bh, bw):
            raise CodecError(
                f"band {name} has shape {arr.shape}, expected {(bh, bw)}"
            )
    current = np.asarray(bands[0], dtype=np.int64)
    pos = 1
    # Stages are stored deepest first; undo them in that order.
    for stage in range(levels_h, 0, -1):
        if stage <= levels_v:
            hl, lh, hh = (
                np.asarray(bands[pos], dtype=np.int64),
                np.asarray(bands[pos + 1], dtype=np.int64),
                np.asarray(bands[pos + 2], dtype=np.int64),
            )
            pos += 3
            low_h = _merge_cols(current, lh)
            high_h = _merge_cols(hl, hh)
            current = _merge_rows(low_h, high_h)
        else:
            high_h = np.asarray(bands[pos], dtype=np.int64)
            pos += 1
            current = _merge_rows(current, high_h)
    if current.shape != (height, width):
        raise CodecError("recomposed plane does not match requested dimensions")
    return current
