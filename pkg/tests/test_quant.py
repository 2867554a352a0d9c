import numpy as np
import pytest

from tlxs.base import dequantize_deadzone, quantize_deadzone
from tlxs.errors import CodecError


def test_step_one_is_identity():
    values = np.arange(-50, 51)
    assert np.array_equal(quantize_deadzone(values, 1), values)


def test_signs_mirror():
    assert quantize_deadzone(-7, 4) == -1
    assert quantize_deadzone(7, 4) == 1


def test_dequantize_examples():
    assert dequantize_deadzone(0, 5) == 0
    assert dequantize_deadzone(1, 4) == 6
    assert dequantize_deadzone(-1, 4) == -6


def test_step_zero_rejected():
    with pytest.raises(CodecError):
        quantize_deadzone(1, 0)
    with pytest.raises(CodecError):
        dequantize_deadzone(1, 0)


def test_error_bound_exhaustive():
    coeffs = np.arange(-1024, 1025, dtype=np.int64)
    for step in range(1, 17):
        recon = dequantize_deadzone(quantize_deadzone(coeffs, step), step)
        assert int(np.abs(recon - coeffs).max()) < step, step


def test_step_one_reconstruction_exact():
    coeffs = np.arange(-1024, 1025, dtype=np.int64)
    recon = dequantize_deadzone(quantize_deadzone(coeffs, 1), 1)
    assert np.array_equal(recon, coeffs)
