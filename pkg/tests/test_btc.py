from fractions import Fraction

import numpy as np
import pytest

from agibtc.btc import decode_product, encode_product, extract_info, product_rate, verify_product
from agibtc.siso import one_hot


def test_rates(c49, c44):
    assert product_rate(c49) == Fraction(49, 64) ** 2
    assert float(product_rate(c49)) == pytest.approx(0.5862, abs=1e-4)
    assert float(product_rate(c44)) == pytest.approx(0.4727, abs=1e-4)


def test_encode(c44, rng):
    assert not encode_product(c44, np.zeros((44, 44), np.uint8)).any()
    info = rng.integers(0, 16, (44, 44), dtype=np.uint8)
    grid = encode_product(c44, info)
    assert verify_product(c44, grid)
    assert (extract_info(c44, grid) == info).all()
    grid[3, 5] ^= 1
    assert not verify_product(c44, grid)
    with pytest.raises(ValueError):
        encode_product(c44, info[:-1])


@pytest.mark.parametrize("fixture", ["c49", "c44"])
def test_noiseless(fixture, request, rng):
    code = request.getfixturevalue(fixture)
    info = rng.integers(0, 16, (code.k, code.k), dtype=np.uint8)
    est, diag = decode_product(one_hot(encode_product(code, info)), code, iters=1)
    assert (est == info).all()
    assert diag.chase_calls == 128
    assert diag.row_failures == [0] and diag.column_failures == [0]


def test_single_symbol_corruption(c49, rng):
    info = rng.integers(0, 16, (49, 49), dtype=np.uint8)
    grid = encode_product(c49, info)
    for r, c in [(0, 0), (17, 60), (63, 63)]:
        bad = grid.copy()
        bad[r, c] ^= 0b1010
        est, _ = decode_product(one_hot(bad, 10.0), c49, iters=2)
        assert (est == info).all()


def test_early_stop(c49, rng):
    info = rng.integers(0, 16, (49, 49), dtype=np.uint8)
    soft = one_hot(encode_product(c49, info))
    est, diag = decode_product(soft, c49, iters=8, early_stop=True)
    assert diag.iterations == 1
    with pytest.raises(ValueError):
        decode_product(soft, c49, iters=0)
