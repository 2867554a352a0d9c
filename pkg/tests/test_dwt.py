import numpy as np
import pytest
from hypothesis import given
import hypothesis.strategies as st

from tlxs.dwt import (
    band_dimensions,
    decompose,
    dwt_forward_53,
    dwt_inverse_53,
    recompose,
)
from tlxs.errors import CodecError

from conftest import plane_arrays


def _reflect(i, n):
    if n == 1:
        return 0
    period = 2 * (n - 1)
    i %= period
    return i if i < n else period - i


def oracle_forward(x):
    """Direct evaluation of the lifting recurrences on the extended signal."""
    n = len(x)
    if n == 1:
        return [x[0]], []

    def xe(i):
        return x[_reflect(i, n)]

    def d(j):
        return xe(2 * j + 1) - (xe(2 * j) + xe(2 * j + 2)) // 2

    nh = n // 2
    nl = n - nh
    high = [d(j) for j in range(nh)]
    low = [xe(2 * i) + (d(i - 1) + d(i) + 2) // 4 for i in range(nl)]
    return low, high


def test_constant_line_has_zero_detail():
    low, high = dwt_forward_53([7, 7, 7, 7])
    assert low.tolist() == [7, 7]
    assert high.tolist() == [0, 0]


def test_ramp_values_match_oracle():
    # interior detail of a linear signal is annihilated; the last detail
    # coefficient sees the reflected boundary instead of the ramp continuing
    want_low, want_high = oracle_forward([0, 1, 2, 3])
    assert (want_low, want_high) == ([0, 2], [0, 1])
    low, high = dwt_forward_53([0, 1, 2, 3])
    assert low.tolist() == want_low
    assert high.tolist() == want_high


@pytest.mark.parametrize("n", list(range(1, 20)) + [33, 64])
def test_forward_matches_oracle_all_lengths(n):
    rng = np.random.default_rng(n)
    x = rng.integers(-1000, 1000, size=n).tolist()
    low, high = dwt_forward_53(x)
    want_low, want_high = oracle_forward(x)
    assert low.tolist() == want_low
    assert high.tolist() == want_high


def test_inverse_of_constant():
    assert dwt_inverse_53([7, 7], [0, 0]).tolist() == [7, 7, 7, 7]


def test_odd_length_roundtrip():
    x = [5, -3, 8, 100, -40]
    low, high = dwt_forward_53(x)
    assert dwt_inverse_53(low, high).tolist() == x


@given(st.lists(st.integers(-(2**20), 2**20), min_size=1, max_size=64))
def test_roundtrip_property(x):
    low, high = dwt_forward_53(x)
    assert dwt_inverse_53(low, high).tolist() == x


def test_empty_line_rejected():
    with pytest.raises(CodecError):
        dwt_forward_53([])


def test_inconsistent_band_lengths_rejected():
    with pytest.raises(CodecError):
        dwt_inverse_53([1, 2, 3], [0])
    with pytest.raises(CodecError):
        dwt_inverse_53([], [1])


def test_single_horizontal_split_dims():
    layout = band_dimensions(4, 2, 1, 0)
    assert layout == [("L", 2, 2), ("H1", 2, 2)]


def test_constant_plane_detail_is_zero():
    plane = np.full((8, 8), 9, dtype=np.int64)
    bands = decompose(plane, 2, 1)
    layout = band_dimensions(8, 8, 2, 1)
    assert len(bands) == len(layout)
    for (name, bw, bh), band in zip(layout, bands):
        assert band.shape == (bh, bw)
        if name != "L":
            assert not band.any(), name
        else:
            assert np.all(band == 9)


def test_band_dims_tile_image_exactly():
    for w, h, lh, lv in [(17, 5, 5, 2), (1, 1, 6, 2), (256, 256, 5, 2), (9, 3, 3, 1)]:
        layout = band_dimensions(w, h, lh, lv)
        assert sum(bw * bh for _, bw, bh in layout) == w * h


@given(
    plane_arrays(17, 5, -(2**17), 2**17),
    st.integers(1, 6),
    st.integers(0, 2),
)
def test_decompose_recompose_identity(plane, levels_h, levels_v):
    levels_v = min(levels_v, levels_h)
    bands = decompose(plane, levels_h, levels_v)
    assert np.array_equal(recompose(bands, 17, 5, levels_h, levels_v), plane)


def test_recompose_rejects_wrong_layout():
    plane = np.zeros((5, 17), dtype=np.int64)
    bands = decompose(plane, 2, 1)
    with pytest.raises(CodecError):
        recompose(bands[:-1], 17, 5, 2, 1)
    bad = [b.copy() for b in bands]
    bad[0] = np.zeros((1, 1), dtype=np.int64)
    with pytest.raises(CodecError):
        recompose(bad, 17, 5, 2, 1)
