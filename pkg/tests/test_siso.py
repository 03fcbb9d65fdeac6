import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from agibtc.hermitian import encode
from agibtc.siso import (
    CLAMP, ChaseConfig, chase_decode, chase_decode_batch, hard_decision, margin, normalize, one_hot,
)

vec16 = arrays(np.float64, 16, elements=st.floats(-200, 200))


@given(vec16)
def test_normalize_range(v):
    out = normalize(v)
    assert out.max() == 0.0
    assert out.min() >= -CLAMP
    assert np.argmax(out) == np.argmax(v)


def test_margin_examples():
    assert margin(np.zeros(16)) == 0.0
    assert margin(one_hot(3)) == CLAMP
    v = np.full(16, -9.0)
    v[4], v[11] = 0.0, -2.5
    assert margin(v) == pytest.approx(2.5)


def test_hard_decision_tie_prefers_small_value():
    v = np.full(16, -1.0)
    v[[5, 9]] = 0.0
    assert hard_decision(v) == 5


def test_config_validation():
    with pytest.raises(ValueError):
        ChaseConfig(p=-1)
    with pytest.raises(ValueError):
        ChaseConfig(s=0)
    with pytest.raises(ValueError):
        ChaseConfig(alpha_schedule=())
    cfg = ChaseConfig(p=3, s=2, alpha_schedule=(0.1, 0.2))
    assert cfg.alpha(0) == 0.1 and cfg.alpha(7) == 0.2
    assert cfg.max_candidates == 27


def test_noiseless(c49, rng):
    cw = encode(c49, rng.integers(0, 16, 49, dtype=np.uint8))
    res = chase_decode(c49, one_hot(cw))
    assert not res.failed
    assert (res.decision == cw).all()
    assert res.n_candidates == 81


def test_small_margin_error_is_repaired(c49, rng):
    cw = encode(c49, rng.integers(0, 16, 49, dtype=np.uint8))
    soft = one_hot(cw, strength=4.0)
    wrong = cw[12] ^ 5
    soft[12, wrong] = 0.1  # wrong value now wins by 0.1
    assert hard_decision(soft)[12] == wrong
    res = chase_decode(c49, soft, ChaseConfig(p=4))
    assert (res.decision == cw).all()


def test_multi_error_repaired_with_chase(c49, rng):
    # two weak errors exceed t = 1 but the Chase search flips one of them
    cw = encode(c49, rng.integers(0, 16, 49, dtype=np.uint8))
    soft = one_hot(cw, strength=6.0)
    for pos in (3, 40):
        soft[pos, cw[pos] ^ 1] = 0.2
    res = chase_decode(c49, soft)
    assert not res.failed
    assert (res.decision == cw).all()


def test_degenerate_chase(c49, rng):
    cw = encode(c49, rng.integers(0, 16, 49, dtype=np.uint8))
    res = chase_decode(c49, one_hot(cw, 3.0), ChaseConfig(p=0, s=5))
    assert res.n_candidates == 1
    assert (res.decision == cw).all()


def test_extrinsic_shape_and_sign(c49, rng):
    cw = encode(c49, rng.integers(0, 16, (6, 49), dtype=np.uint8))
    soft = one_hot(cw, 3.0) + rng.normal(0, 1.0, (6, 64, 16))
    res = chase_decode_batch(c49, soft, ChaseConfig(), 2)
    assert res.extrinsic.shape == (6, 64, 16)
    ok = ~res.failed
    assert np.all(res.extrinsic <= 0) and np.all(res.extrinsic >= -CLAMP)
    # the decided value always carries the top extrinsic entry
    at_dec = np.take_along_axis(res.extrinsic[ok], res.decision[ok][..., None].astype(int), -1)
    assert (at_dec == 0).all()


def test_failed_words_export_nothing(c44):
    # uniform input: every candidate is the all-zero word, which decodes fine;
    # a random high-noise word with p = 0 typically fails
    rng = np.random.default_rng(1)
    soft = rng.normal(0, 5, (20, 64, 16))
    res = chase_decode_batch(c44, soft, ChaseConfig(p=0, s=1))
    assert res.failed.any()
    assert not res.extrinsic[res.failed].any()
    assert (res.decision[res.failed] == hard_decision(soft[res.failed])).all()


def test_bad_shape(c49):
    with pytest.raises(ValueError):
        chase_decode_batch(c49, np.zeros((2, 63, 16)), ChaseConfig())


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_decision_is_codeword_or_flagged(seed):
    from agibtc.hermitian import build_code, is_codeword
    code = build_code(49)
    rng = np.random.default_rng(seed)
    cw = encode(code, rng.integers(0, 16, 49, dtype=np.uint8))
    soft = one_hot(cw, 2.0) + rng.normal(0, 1.5, (64, 16))
    res = chase_decode(code, soft)
    assert res.failed or is_codeword(code, res.decision)
