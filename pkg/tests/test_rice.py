import numpy as np
import pytest
from hypothesis import given
import hypothesis.strategies as st

from tlxs.errors import BitstreamError
from tlxs.rice import (
    choose_rice_k,
    decode_band,
    encode_band,
    rice_bit_cost,
    zigzag_map,
    zigzag_unmap,
)


def test_zigzag_small_values():
    values = np.array([0, -1, 1, -2, 2, -3, 3])
    assert zigzag_map(values).tolist() == [0, 1, 2, 3, 4, 5, 6]


@given(st.lists(st.integers(-(2**40), 2**40), max_size=50))
def test_zigzag_bijective(values):
    arr = np.asarray(values, dtype=np.int64)
    assert np.array_equal(zigzag_unmap(zigzag_map(arr)), arr)


def test_zero_band_is_one_bit_per_sample():
    bits = encode_band(np.zeros(17, dtype=np.int64), 0)
    assert bits.tolist() == [0] * 17


def test_minus_one_codes_as_10():
    assert encode_band(np.array([-1]), 0).tolist() == [1, 0]


def test_remainder_bits_msb_first():
    # zigzag(3) = 6; with k=2: q=1 -> "10", remainder "10"
    assert encode_band(np.array([3]), 2).tolist() == [1, 0, 1, 0]


@pytest.mark.parametrize("k", range(0, 11))
def test_exhaustive_roundtrip(k):
    values = np.arange(-512, 513, dtype=np.int64)
    bits = encode_band(values, k)
    assert bits.size == rice_bit_cost(values, k)
    assert np.array_equal(decode_band(bits, values.size, k), values)


def test_truncation_detected():
    bits = encode_band(np.arange(-16, 17, dtype=np.int64), 2)
    with pytest.raises(BitstreamError):
        decode_band(bits[:-4], 33, 2)


def test_trailing_bits_detected():
    bits = encode_band(np.array([1, 2, 3]), 1)
    padded = np.concatenate([bits, np.zeros(3, dtype=np.uint8)])
    with pytest.raises(BitstreamError):
        decode_band(padded, 3, 1)


def test_choose_k_all_zero():
    assert choose_rice_k(np.zeros(100, dtype=np.int64)) == 0


def test_choose_k_singleton_zero_tiebreak():
    assert choose_rice_k(np.array([0])) == 0


def test_choose_k_matches_measured_argmin():
    band = np.full(50, 4, dtype=np.int64)  # zigzag value 8
    measured = [encode_band(band, k).size for k in range(25)]
    want = measured.index(min(measured))
    assert choose_rice_k(band) == want


@given(
    st.lists(st.integers(-4000, 4000), min_size=1, max_size=200),
    st.integers(0, 12),
)
def test_roundtrip_property(values, k):
    arr = np.asarray(values, dtype=np.int64)
    assert np.array_equal(decode_band(encode_band(arr, k), arr.size, k), arr)


@given(st.lists(st.integers(-4000, 4000), min_size=1, max_size=200))
def test_chosen_k_is_globally_minimal(values):
    arr = np.asarray(values, dtype=np.int64)
    k = choose_rice_k(arr)
    costs = [rice_bit_cost(arr, j) for j in range(25)]
    assert costs[k] == min(costs)
    assert all(costs[j] > costs[k] for j in range(k))
