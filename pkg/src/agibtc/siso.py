"""
Soft-in soft-out decoding of one AG codeword by symbol-level Chase search.

Soft information is carried as log-likelihood vectors over the 16 field
values, stored as float arrays whose last axis has length 16 (a
"SymbolReliability"), normalized so the largest entry is 0 and clamped below
at ``-CLAMP``.  A SoftWord is an array of shape (64, 16); batches add a
leading axis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .hermitian import AgCode, hard_decode_batch

CLAMP = 50.0

DEFAULT_SCHEDULE = (0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)


def normalize(loglik) -> np.ndarray:
    """Shift each 16-vector so its maximum is 0, then clamp at ``-CLAMP``."""
    a = np.asarray(loglik, dtype=np.float64)
    a = a - a.max(axis=-1, keepdims=True)
    return np.maximum(a, -CLAMP)


def hard_decision(rel) -> np.ndarray:
    """Most likely value per symbol; ties go to the smallest field element."""
    return np.argmax(rel, axis=-1).astype(np.uint8)


def margin(rel) -> np.ndarray | float:
    """Gap between the best and the runner-up log-likelihood (>= 0)."""
    rel = normalize(rel)
    top2 = -np.partition(-rel, 1, axis=-1)[..., :2]
    out = top2[..., 0] - top2[..., 1]
    return float(out) if out.ndim == 0 else out


def one_hot(symbols, strength: float = CLAMP) -> np.ndarray:
    """Reliabilities that are 0 at ``symbols`` and ``-strength`` elsewhere."""
    symbols = np.asarray(symbols, dtype=np.intp)
    out = np.full(symbols.shape + (16,), -float(strength))
    np.put_along_axis(out, symbols[..., None], 0.0, axis=-1)
    return out


@dataclass(frozen=True)
class ChaseConfig:
    p: int = 4
    s: int = 2
    alpha_schedule: tuple[float, ...] = DEFAULT_SCHEDULE
    beta_schedule: tuple[float, ...] = DEFAULT_SCHEDULE

    def __post_init__(self):
        if self.p < 0:
            raise ValueError("p must be >= 0")
        if not 1 <= self.s <= 15:
            raise ValueError("s must be in [1, 15]")
        if not self.alpha_schedule or not self.beta_schedule:
            raise ValueError("schedules must be non-empty")
        object.__setattr__(self, "alpha_schedule", tuple(float(a) for a in self.alpha_schedule))
        object.__setattr__(self, "beta_schedule", tuple(float(b) for b in self.beta_schedule))

    def alpha(self, iteration: int) -> float:
        return self.alpha_schedule[min(iteration, len(self.alpha_schedule) - 1)]

    def beta(self, iteration: int) -> float:
        return self.beta_schedule[min(iteration, len(self.beta_schedule) - 1)]

    @property
    def max_candidates(self) -> int:
        return (self.s + 1) ** self.p


@dataclass
class ChaseResult:
    decision: np.ndarray  # (..., n) uint8
    extrinsic: np.ndarray  # (..., n, 16)
    failed: np.ndarray  # (...) bool, no candidate decoded
    n_candidates: int  # test words hard-decoded per input word
    n_decoded: np.ndarray = field(repr=False)  # (...) distinct codewords found


@lru_cache(maxsize=None)
def _patterns(p: int, s: int) -> np.ndarray:
    pats = np.array(list(itertools.product(range(s + 1), repeat=p)), dtype=np.intp)
    return pats.reshape(len(pats), p)


def chase_decode_batch(code: AgCode, soft, cfg: ChaseConfig, iteration: int = 0) -> ChaseResult:
    """Chase-decode a batch of SoftWords of shape (N, n, 16)."""
    rel = normalize(soft)
    if rel.ndim != 3 or rel.shape[1:] != (code.n, 16):
        raise ValueError(f"expected soft input of shape (N, {code.n}, 16), got {rel.shape}")
    nw, n, _ = rel.shape
    words = np.arange(nw)

    # values per symbol, best first (stable: ties favour the smaller value)
    ranked = np.argsort(-rel, axis=-1, kind="stable")
    hard = ranked[..., 0].astype(np.uint8)
    runner_up = np.take_along_axis(rel, ranked[..., 1:2], axis=-1)[..., 0]
    p = min(cfg.p, n)
    weakest = np.argsort(-runner_up, axis=1, kind="stable")[:, :p]

    pats = _patterns(p, cfg.s)
    n_cand = len(pats)
    cand = np.repeat(hard[:, None, :], n_cand, axis=1)
    for j in range(p):
        pos = weakest[:, j]
        alts = ranked[words, pos][:, pats[:, j]]  # (N, C)
        cand[words[:, None], np.arange(n_cand)[None, :], pos[:, None]] = alts

    decoded, ok = hard_decode_batch(code, cand.reshape(-1, n))
    decoded = decoded.reshape(nw, n_cand, n)
    ok = ok.reshape(nw, n_cand)
    pos_idx = np.arange(n)
    metric = rel[words[:, None, None], pos_idx, decoded].sum(axis=-1)
    metric = np.where(ok, metric, -np.inf)

    best = np.argmax(metric, axis=1)
    failed = ~ok.any(axis=1)
    decision = np.where(failed[:, None], hard, decoded[words, best])
    best_metric = np.where(failed, 0.0, metric[words, best])

    # best competitor metric for every (position, value)
    comp = np.full((nw, n, 16), -np.inf)
    valid_w, valid_c = np.nonzero(ok)
    if valid_w.size:
        np.maximum.at(
            comp,
            (valid_w[:, None], pos_idx[None, :], decoded[valid_w, valid_c]),
            metric[valid_w, valid_c][:, None],
        )
    at_decision = np.take_along_axis(rel, decision[..., None].astype(np.intp), axis=-1)
    from_competitor = (comp - best_metric[:, None, None]) - (rel - at_decision)

    fallback = -cfg.beta(iteration) * _distance_bound(rel, decision, code.designed_distance)
    ext = np.where(
        np.isfinite(comp),
        cfg.alpha(iteration) * from_competitor,
        fallback[..., None],
    )
    np.put_along_axis(ext, decision[..., None].astype(np.intp), 0.0, axis=-1)
    # a word with no decodable candidate carries no information
    ext[failed] = 0.0

    n_decoded = np.array([len({w.tobytes() for w in decoded[i, ok[i]]}) for i in range(nw)])
    return ChaseResult(decision, normalize(ext), failed, n_cand, n_decoded)


def _distance_bound(rel: np.ndarray, decision: np.ndarray, distance: int) -> np.ndarray:
    """Lower bound on the metric loss of any codeword that changes a position.

    Such a codeword differs from the decision in at least ``distance``
    positions, so away from position l it pays at least the sum of the
    ``distance - 1`` cheapest deviations elsewhere.
    """
    nw, n, _ = rel.shape
    at_dec = np.take_along_axis(rel, decision[..., None].astype(np.intp), axis=-1)[..., 0]
    others = rel.copy()
    np.put_along_axis(others, decision[..., None].astype(np.intp), -np.inf, axis=-1)
    cost = at_dec - others.max(axis=-1)
    k = min(distance - 1, n - 1)
    if k <= 0:
        return np.zeros((nw, n))
    cheapest = np.sort(cost, axis=1)[:, : k + 1]
    base = cheapest[:, :k].sum(axis=1)
    kth = cheapest[:, k - 1]
    # positions among the k cheapest are replaced by the (k+1)-th
    bound = np.where(cost <= kth[:, None], base[:, None] - cost + cheapest[:, k:k + 1], base[:, None])
    return np.maximum(bound, 0.0)


def chase_decode(code: AgCode, soft, cfg: ChaseConfig | None = None, iteration: int = 0) -> ChaseResult:
    """Chase-decode a single SoftWord of shape (n, 16)."""
    cfg = cfg or ChaseConfig()
    res = chase_decode_batch(code, np.asarray(soft)[None], cfg, iteration)
    return ChaseResult(
        res.decision[0], res.extrinsic[0], bool(res.failed[0]), res.n_candidates, res.n_decoded[0]
    )
