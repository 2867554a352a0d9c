"""Golomb-Rice coding of signed values.

Signed values are first zigzag-mapped onto non-negative integers
(0, -1, 1, -2, 2, ... -> 0, 1, 2, 3, 4, ...). A mapped value ``v`` with
parameter ``k`` is coded as ``v >> k`` one-bits, a terminating zero bit, then
the low ``k`` bits of ``v`` most significant first. ``k`` may range over
0..24.

Encoding assembles whole bands as numpy bit arrays; decoding walks the
positions of zero bits, which keeps the per-sample Python work down to a few
integer operations.
"""

from __future__ import annotations

import numpy as np

from .errors import BitstreamError

MAX_RICE_K = 24


def zigzag_map(values: np.ndarray) -> np.ndarray:
    """Map signed integers onto non-negative ones (0,-1,1,-2 -> 0,1,2,3)."""
    values = np.asarray(values, dtype=np.int64)
    return np.where(values >= 0, 2 * values, -2 * values - 1)


def zigzag_unmap(mapped: np.ndarray) -> np.ndarray:
    """Inverse of :func:`zigzag_map`."""
    mapped = np.asarray(mapped, dtype=np.int64)
    return np.where(mapped % 2 == 0, mapped // 2, -(mapped + 1) // 2)


def rice_bit_cost(indices: np.ndarray, k: int) -> int:
    """Exact number of bits :func:`encode_band` emits for these values."""
    mapped = zigzag_map(indices)
    return int(np.sum(mapped >> k)) + mapped.size * (1 + k)


def choose_rice_k(indices: np.ndarray) -> int:
    """Parameter in 0..MAX_RICE_K minimizing coded length, ties to smallest."""
    mapped = zigzag_map(indices)
    if mapped.size == 0:
        return 0
    best_k = 0
    best_cost = int(np.sum(mapped)) + mapped.size
    for k in range(1, MAX_RICE_K + 1):
        cost = int(np.sum(mapped >> k)) + mapped.size * (1 + k)
        if cost < best_cost:
            best_cost = cost
            best_k = k
    return best_k


def encode_band(indices: np.ndarray, k: int) -> np.ndarray:
    """Encode signed values with fixed parameter ``k``; returns a 0/1 array."""
    if not 0 <= k <= MAX_RICE_K:
        raise ValueError(f"rice parameter {k} out of range")
    mapped = zigzag_map(indices).ravel()
    return pack_codes(mapped, np.full(mapped.shape, k, dtype=np.int64))


def pack_codes(mapped: np.ndarray, k: np.ndarray) -> np.ndarray:
    """Assemble Golomb-Rice codes for ``mapped`` values with per-value ``k``."""
    if mapped.size == 0:
        return np.zeros(0, dtype=np.uint8)
    q = mapped >> k
    lengths = q + 1 + k
    total = int(lengths.sum())
    starts = np.zeros(mapped.size, dtype=np.int64)
    np.cumsum(lengths[:-1], out=starts[1:])

    bits = np.zeros(total, dtype=np.uint8)
    # Unary runs of ones via a difference array: +1 at each run start, -1 at
    # each run end, then a running sum marks every position inside a run.
    # Start and end indices are each unique, so fancy indexing is safe.
    delta = np.zeros(total + 1, dtype=np.int64)
    delta[starts] = 1
    delta[starts + q] -= 1
    bits[np.cumsum(delta[:total]) > 0] = 1
    # Remainder bits, MSB first; bit j only exists for values with k > j.
    max_k = int(k.max())
    rem_base = starts + q + 1
    for j in range(max_k):
        sel = k > j
        bits[rem_base[sel] + j] = (mapped[sel] >> (k[sel] - 1 - j)) & 1
    return bits


def decode_band(bits: np.ndarray, count: int, k: int) -> np.ndarray:
    """Decode ``count`` signed values; the bit array must be exactly consumed."""
    if not 0 <= k <= MAX_RICE_K:
        raise ValueError(f"rice parameter {k} out of range")
    mapped, consumed = decode_mapped(bits, count, k)
    if consumed != bits.size:
        raise BitstreamError("trailing bits after band payload")
    return zigzag_unmap(mapped)


def decode_mapped(bits: np.ndarray, count: int, k: int) -> tuple[np.ndarray, int]:
    """Decode ``count`` mapped values at fixed ``k``; returns (values, bits used)."""
    if count == 0:
        return np.zeros(0, dtype=np.int64), 0
    nbits = bits.size
    zero_positions = np.flatnonzero(bits == 0)
    if k == 0:
        if zero_positions.size < count:
            raise BitstreamError("bitstream truncated inside band")
        terms = zero_positions[:count].astype(np.int64)
        starts = np.empty(count, dtype=np.int64)
        starts[0] = 0
        starts[1:] = terms[:-1] + 1
        q = terms - starts
        return q, int(terms[-1]) + 1
    zeros = zero_positions.tolist()
    nzeros = len(zeros)
    terms = []
    pos = 0
    zi = 0
    for _ in range(count):
        while zi < nzeros and zeros[zi] < pos:
            zi += 1
        if zi >= nzeros:
            raise BitstreamError("bitstream truncated inside band")
        t = zeros[zi]
        zi += 1
        terms.append(t)
        pos = t + 1 + k
    if pos > nbits:
        raise BitstreamError("bitstream truncated inside band")
    term_arr = np.asarray(terms, dtype=np.int64)
    starts = np.empty(count, dtype=np.int64)
    starts[0] = 0
    starts[1:] = term_arr[:-1] + 1 + k
    q = term_arr - starts
    rem = np.zeros(count, dtype=np.int64)
    for j in range(k):
        rem = (rem << 1) | bits[term_arr + 1 + j]
    return (q << k) | rem, pos


def remainder_lookup(bits: np.ndarray, width: int = MAX_RICE_K) -> np.ndarray:
    """``lookup[p]`` = the ``width`` bits starting at position ``p`` as an int.

    Positions past the end read as zero. Built by doubling, so construction is
    a handful of vectorized passes regardless of stream length.
    """
    n = bits.size
    cur = np.concatenate([bits.astype(np.int64), np.zeros(width, dtype=np.int64)])
    have = 1
    while have < width:
        step = min(have, width - have)
        ahead = np.zeros_like(cur)
        ahead[: cur.size - have] = cur[have:]
        # top `step` bits of the `have`-wide read starting `have` further on
        cur = (cur << step) | (ahead >> (have - step))
        have += step
    return cur[: n + 1]
