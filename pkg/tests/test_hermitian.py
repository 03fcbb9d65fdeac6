import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from agibtc import galois as gf
from agibtc.hermitian import (
    GENUS, DecodingFailure, Monomial, build_code, code_from_id, encode, enumerate_points,
    evaluate, hard_decode, hard_decode_batch, is_codeword, monomials, syndrome,
)


def test_points():
    curve = enumerate_points()
    assert len(curve.points) == 64
    assert len(set(curve.points)) == 64
    for x, y in curve.points:
        assert gf.pow(y, 4) ^ y == gf.pow(x, 5)
    assert curve.genus == GENUS == 6
    # each x has exactly q = 4 points above it
    assert np.bincount(curve.xs, minlength=16).tolist() == [4] * 16


def test_monomial_counts():
    assert len(monomials(54)) == 49
    assert len(monomials(49)) == 44
    per_b = [sum(1 for mo in monomials(54) if mo.b == b) for b in range(4)]
    assert per_b == [14, 13, 12, 10]
    per_b = [sum(1 for mo in monomials(49) if mo.b == b) for b in range(4)]
    assert per_b == [13, 12, 10, 9]
    orders = [mo.pole_order for mo in monomials(54)]
    assert orders == sorted(set(orders))
    with pytest.raises(ValueError):
        Monomial.of(0, 4)


@pytest.mark.parametrize("k,m,d,t", [(49, 54, 10, 1), (44, 49, 15, 4)])
def test_parameters(k, m, d, t):
    code = build_code(k)
    assert (code.n, code.k, code.m, code.g) == (64, k, m, 6)
    assert code.designed_distance == d
    assert code.t == t
    assert gf.rank(code.generator) == k
    assert gf.rank(code.parity_check) == 64 - k
    assert len(code.info_positions) == k
    assert sorted(np.r_[code.info_positions, code.parity_positions].tolist()) == list(range(64))


def test_bad_dimension():
    with pytest.raises(ValueError):
        build_code(3)
    with pytest.raises(ValueError):
        code_from_id("bogus")


def test_systematic(c49):
    g = c49.generator_systematic
    assert (g[:, c49.info_positions] == np.eye(49, dtype=np.uint8)).all()
    assert not encode(c49, np.zeros(49, np.uint8)).any()
    for i in (0, 17, 48):
        e = np.zeros(49, np.uint8)
        e[i] = 1
        assert (encode(c49, e) == g[i]).all()


def test_generator_spans_evaluation_code(c44):
    raw = evaluate(list(c44.basis))
    both = np.concatenate([raw, c44.generator_systematic])
    assert gf.rank(both) == 44


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(0, 15), min_size=49, max_size=49),
       st.lists(st.integers(0, 15), min_size=49, max_size=49))
def test_linearity(u, v):
    code = build_code(49)
    u, v = np.array(u, np.uint8), np.array(v, np.uint8)
    assert (encode(code, u ^ v) == encode(code, u) ^ encode(code, v)).all()
    cw = encode(code, u)
    assert is_codeword(code, cw)
    assert (cw[code.info_positions] == u).all()


def test_min_weight_sample(c49, c44, rng):
    for code in (c49, c44):
        info = rng.integers(0, 16, (2000, code.k), dtype=np.uint8)
        info = info[info.any(axis=1)]
        w = (encode(code, info) != 0).sum(axis=1)
        assert w.min() >= code.designed_distance


def test_decode_clean_and_single(c49, rng):
    cw = encode(c49, rng.integers(0, 16, 49, dtype=np.uint8))
    assert (hard_decode(c49, cw) == cw).all()
    bad = cw.copy()
    bad[30] ^= 7
    assert (hard_decode(c49, bad) == cw).all()


@pytest.mark.parametrize("errors", [1, 2, 3, 4])
def test_decode_ag64_44(c44, rng, errors):
    info = rng.integers(0, 16, (200, 44), dtype=np.uint8)
    cw = encode(c44, info)
    rx = cw.copy()
    for row in rx:
        pos = rng.choice(64, errors, replace=False)
        row[pos] ^= rng.integers(1, 16, errors, dtype=np.uint8)
    dec, ok = hard_decode_batch(c44, rx)
    assert ok.all()
    assert (dec == cw).all()


def test_decode_failure_beyond_radius(c49, rng):
    # weight 2..8 errors sit at distance >= 2 from every codeword (d >= 10)
    cw = encode(c49, rng.integers(0, 16, (100, 49), dtype=np.uint8))
    bad = cw.copy()
    for row in bad:
        w = rng.integers(2, 9)
        pos = rng.choice(64, w, replace=False)
        row[pos] ^= rng.integers(1, 16, w, dtype=np.uint8)
    dec, ok = hard_decode_batch(c49, bad)
    assert not ok.any()
    assert (dec == bad).all()
    with pytest.raises(DecodingFailure):
        hard_decode(c49, bad[0])


def test_syndrome_shape(c44):
    assert syndrome(c44, np.zeros((3, 64), np.uint8)).shape == (3, 20)
