"""Limb decomposition and reconstruction."""

import pytest

from juggle.group import SECP256K1, TOY
from juggle.rng import SeededRng
from juggle.segmentation import (LimbOutOfRange, SecretOutOfRange,
                                 SegmentationParams, reconstruct, segment)


def test_param_derivation():
    params = SegmentationParams.for_group(SECP256K1, 8)
    assert params.m == 32
    assert params.msb_bound == 2 ** 7
    assert params.secret_bound == 2 ** 255
    assert params.weight(1) == 1
    assert params.weight(2) == 2 ** 8
    params = SegmentationParams.for_group(TOY, 4)
    assert params.m == 5


def test_zero_secret():
    params = SegmentationParams(l=4, q_bits=16)
    assert segment(0, params) == [0, 0, 0, 0]
    assert reconstruct([0, 0, 0, 0], params, 1 << 16) == 0


def test_base16_digits():
    params = SegmentationParams(l=4, q_bits=16)
    assert segment(0x1234, params) == [0x4, 0x3, 0x2, 0x1]
    assert reconstruct([0x4, 0x3, 0x2, 0x1], params, (1 << 16) + 1) == 0x1234


def test_roundtrip_255_bit():
    params = SegmentationParams.for_group(SECP256K1, 8)
    rng = SeededRng(1)
    for _ in range(1000):
        x = rng.randbelow(params.secret_bound)
        limbs = segment(x, params)
        assert len(limbs) == 32
        assert all(0 <= limb < 2 ** 8 for limb in limbs)
        assert limbs[-1] < 2 ** 7
        assert reconstruct(limbs, params, SECP256K1.q) == x


def test_msb_restriction():
    params = SegmentationParams(l=4, q_bits=16)
    segment(params.secret_bound - 1, params)
    with pytest.raises(SecretOutOfRange):
        segment(params.secret_bound, params)
    with pytest.raises(SecretOutOfRange):
        segment(-1, params)


def test_limb_bounds():
    params = SegmentationParams(l=4, q_bits=16)
    q = (1 << 16) + 1
    with pytest.raises(LimbOutOfRange):
        reconstruct([16, 0, 0, 0], params, q)
    with pytest.raises(LimbOutOfRange):
        reconstruct([0, 0, 0, 8], params, q)  # top limb tighter
    with pytest.raises(LimbOutOfRange):
        reconstruct([0, 0, 0], params, q)
    assert params.limb_bound(1) == 16
    assert params.limb_bound(params.m) == 8
