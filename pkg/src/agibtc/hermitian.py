"""
One-point Hermitian codes over GF(16).

The curve is y^4 + y = x^5 (q = 4, genus 6) with its 64 affine rational
points.  A code is the evaluation of the Riemann-Roch space L(m P_inf),
spanned by the monomials x^a y^b with b <= 3 and pole order 4a + 5b <= m.

Hard decoding uses the basic syndrome algorithm: an error-locating function
is read off the kernel of a small syndrome matrix, its zeros give the
candidate error positions, and the error values come from the parity-check
equations restricted to those positions.  It corrects up to
``t = (d* - 1 - g) // 2`` symbol errors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from numba import njit

from . import galois as gf

Q = 4
N = 64
GENUS = Q * (Q - 1) // 2

CODE_IDS = {"ag64_49": 49, "ag64_44": 44}


class DecodingFailure(Exception):
    """No codeword could be recovered within the decoding radius."""


@dataclass(frozen=True)
class HermitianCurve:
    points: tuple[tuple[int, int], ...]
    genus: int = GENUS

    @property
    def xs(self) -> np.ndarray:
        return np.array([p[0] for p in self.points], dtype=np.uint8)

    @property
    def ys(self) -> np.ndarray:
        return np.array([p[1] for p in self.points], dtype=np.uint8)


@dataclass(frozen=True, order=True)
class Monomial:
    pole_order: int
    a: int
    b: int

    @classmethod
    def of(cls, a: int, b: int) -> "Monomial":
        if a < 0 or not 0 <= b < Q:
            raise ValueError(f"bad monomial exponents ({a}, {b})")
        return cls(Q * a + (Q + 1) * b, a, b)


@lru_cache(maxsize=None)
def enumerate_points() -> HermitianCurve:
    pts = []
    for x in range(16):
        rhs = gf.pow(x, Q + 1)
        for y in range(16):
            if gf.pow(y, Q) ^ y == rhs:
                pts.append((x, y))
    if len(pts) != N:
        raise RuntimeError(f"expected {N} points, found {len(pts)}")
    return HermitianCurve(tuple(pts))


def monomials(m: int) -> list[Monomial]:
    """Basis of L(m P_inf), sorted by pole order (each pole order occurs once)."""
    out = [
        Monomial.of(a, b)
        for b in range(Q)
        for a in range(max(m, -1) // Q + 1)
        if Q * a + (Q + 1) * b <= m
    ]
    return sorted(out)


def evaluate(monos: list[Monomial], curve: HermitianCurve | None = None) -> np.ndarray:
    """Matrix of shape (len(monos), 64) with entry [i, l] = phi_i(P_l)."""
    curve = curve or enumerate_points()
    out = np.zeros((len(monos), len(curve.points)), dtype=np.uint8)
    for i, mono in enumerate(monos):
        for l, (x, y) in enumerate(curve.points):
            out[i, l] = gf.mul(gf.pow(x, mono.a), gf.pow(y, mono.b))
    return out


@dataclass(frozen=True, eq=False)
class AgCode:
    n: int
    k: int
    m: int
    g: int
    designed_distance: int
    t: int
    basis: tuple[Monomial, ...]
    generator: np.ndarray
    generator_systematic: np.ndarray
    info_positions: np.ndarray
    parity_positions: np.ndarray
    parity_check: np.ndarray
    # decoder tables
    _locator_eval: np.ndarray = field(repr=False)
    _syndrome_tensor: np.ndarray = field(repr=False)
    _n_locator: int = field(repr=False)
    _n_test: int = field(repr=False)

    @property
    def name(self) -> str:
        return f"AG({self.n},{self.k})"

    @property
    def rate(self) -> float:
        return self.k / self.n


@lru_cache(maxsize=None)
def build_code(k_target: int) -> AgCode:
    """Construct the Hermitian code of dimension ``k_target`` in systematic form."""
    g = GENUS
    m = k_target + g - 1
    if not 2 * g - 2 < m < N:
        raise ValueError(f"dimension {k_target} outside the range k = m - g + 1, 2g-2 < m < n")
    curve = enumerate_points()
    basis = monomials(m)
    if len(basis) != k_target:
        raise RuntimeError(f"L({m}P) has {len(basis)} monomials, expected {k_target}")

    gen = evaluate(basis, curve)
    sys_gen, pivots, rank = gf.row_reduce(gen)
    if int(rank) != k_target:
        raise RuntimeError(f"generator rank {int(rank)} != {k_target}")
    info = np.asarray(pivots, dtype=np.intp)
    parity = np.setdiff1d(np.arange(N), info)

    # the dual of C_L(D, mP) is C_L(D, (n + 2g - 2 - m)P) on this curve
    m_dual = N + 2 * g - 2 - m
    check = evaluate(monomials(m_dual), curve)
    if check.shape[0] != N - k_target or gf.matmul(gen, check.T).any():
        raise RuntimeError("parity-check matrix does not annihilate the code")

    d = N - m
    t = max((d - 1 - g) // 2, 0)
    # locator space: the smallest L(aP) holding t + 1 independent functions
    loc = monomials(m_dual)[: t + 1]
    a = loc[-1].pole_order
    test = monomials(m_dual - a)
    if test[-1].pole_order < t + 2 * g - 1:
        raise RuntimeError("syndrome matrix too small for the decoding radius")
    loc_eval = evaluate(loc, curve)
    test_eval = evaluate(test, curve)
    # tensor[l, i * len(test) + j] = phi_i(P_l) psi_j(P_l)
    tensor = gf.mul_arr(loc_eval[:, None, :], test_eval[None, :, :]).reshape(-1, N).T.copy()

    for arr in (gen, sys_gen, info, parity, check, loc_eval, tensor):
        arr.setflags(write=False)
    return AgCode(
        n=N,
        k=k_target,
        m=m,
        g=g,
        designed_distance=d,
        t=t,
        basis=tuple(basis),
        generator=gen,
        generator_systematic=sys_gen,
        info_positions=info,
        parity_positions=parity,
        parity_check=check,
        _locator_eval=loc_eval,
        _syndrome_tensor=tensor,
        _n_locator=len(loc),
        _n_test=len(test),
    )


def code_from_id(code_id: str) -> AgCode:
    try:
        return build_code(CODE_IDS[code_id])
    except KeyError:
        raise ValueError(f"unknown code {code_id!r}; expected one of {sorted(CODE_IDS)}") from None


def encode(code: AgCode, info) -> np.ndarray:
    """Systematically encode ``info`` (shape (..., k)) into codewords (..., n)."""
    info = np.asarray(info, dtype=np.uint8)
    if info.shape[-1] != code.k:
        raise ValueError(f"expected {code.k} information symbols, got {info.shape[-1]}")
    return gf.matvec(info, code.generator_systematic)


def syndrome(code: AgCode, words) -> np.ndarray:
    return gf.matvec(np.asarray(words, dtype=np.uint8), code.parity_check.T)


def is_codeword(code: AgCode, words) -> np.ndarray:
    return ~syndrome(code, words).any(axis=-1)


def hard_decode_batch(code: AgCode, received) -> tuple[np.ndarray, np.ndarray]:
    """Decode a batch of words of shape (B, n).

    Returns ``(decoded, ok)``.  Rows with ``ok`` false are failures and hold
    the received word unchanged; rows with ``ok`` true are verified codewords
    within distance ``code.t`` of the input.
    """
    r = np.ascontiguousarray(received, dtype=np.uint8)
    if r.ndim != 2 or r.shape[1] != code.n:
        raise ValueError(f"expected shape (B, {code.n}), got {r.shape}")
    decoded = r.copy()
    ok = np.zeros(r.shape[0], dtype=np.bool_)
    _decode_words(
        decoded, ok, code.t, code.parity_check, code._syndrome_tensor,
        code._locator_eval, code._n_test, gf.MUL, gf.INV,
    )
    return decoded, ok


@njit(cache=True)
def _eliminate(m, ncols, piv, mul_t, inv_t):
    """In-place RREF of ``m`` over the first ``ncols`` columns; returns the rank."""
    rows, cols = m.shape
    rank = 0
    for c in range(ncols):
        if rank == rows:
            break
        sel = -1
        for i in range(rank, rows):
            if m[i, c] != 0:
                sel = i
                break
        if sel < 0:
            continue
        for j in range(cols):
            tmp = m[rank, j]
            m[rank, j] = m[sel, j]
            m[sel, j] = tmp
        scale = inv_t[m[rank, c]]
        for j in range(cols):
            m[rank, j] = mul_t[scale, m[rank, j]]
        for i in range(rows):
            f = m[i, c]
            if i != rank and f != 0:
                for j in range(cols):
                    m[i, j] ^= mul_t[f, m[rank, j]]
        piv[rank] = c
        rank += 1
    return rank


@njit(cache=True)
def _decode_words(words, ok, t, check, tensor, loc_eval, n_test, mul_t, inv_t):
    n_words, n = words.shape
    n_check = check.shape[0]
    n_loc = loc_eval.shape[0]
    syn = np.zeros(n_check, np.uint8)
    s_t = np.zeros((n_test, n_loc), np.uint8)
    piv = np.zeros(max(n_test, n_check), np.int64)
    zeros = np.zeros(n, np.int64)
    for w in range(n_words):
        r = words[w]
        nonzero = False
        for j in range(n_check):
            acc = 0
            for l in range(n):
                acc ^= mul_t[r[l], check[j, l]]
            syn[j] = acc
            if acc != 0:
                nonzero = True
        if not nonzero:
            ok[w] = True
            continue
        if t == 0:
            continue

        # S^T[j, i] = sum_l r_l phi_i(P_l) psi_j(P_l)
        for i in range(n_loc):
            for j in range(n_test):
                acc = 0
                col = i * n_test + j
                for l in range(n):
                    acc ^= mul_t[r[l], tensor[l, col]]
                s_t[j, i] = acc
        rank = _eliminate(s_t, n_loc, piv, mul_t, inv_t)
        if rank == n_loc:
            continue
        # first free column gives the kernel vector of least pole order
        free = 0
        for e in range(rank):
            if piv[e] == free:
                free += 1
            else:
                break
        loc = np.zeros(n_loc, np.uint8)
        loc[free] = 1
        for e in range(rank):
            if piv[e] < free:
                loc[piv[e]] = s_t[e, free]

        n_zero = 0
        for l in range(n):
            acc = 0
            for i in range(n_loc):
                acc ^= mul_t[loc[i], loc_eval[i, l]]
            if acc == 0:
                zeros[n_zero] = l
                n_zero += 1
        if n_zero == 0:
            continue

        system = np.zeros((n_check, n_zero + 1), np.uint8)
        for j in range(n_check):
            for z in range(n_zero):
                system[j, z] = check[j, zeros[z]]
            system[j, n_zero] = syn[j]
        rank = _eliminate(system, n_zero, piv, mul_t, inv_t)
        consistent = True
        for j in range(rank, n_check):
            if system[j, n_zero] != 0:
                consistent = False
                break
        if not consistent:
            continue
        weight = 0
        for e in range(rank):
            if system[e, n_zero] != 0:
                weight += 1
        if weight > t:
            continue
        fixed = r.copy()
        for e in range(rank):
            fixed[zeros[piv[e]]] ^= system[e, n_zero]
        valid = True
        for j in range(n_check):
            acc = 0
            for l in range(n):
                acc ^= mul_t[fixed[l], check[j, l]]
            if acc != 0:
                valid = False
                break
        if valid:
            words[w] = fixed
            ok[w] = True


def hard_decode(code: AgCode, received) -> np.ndarray:
    """Bounded-distance decode one word; raises :class:`DecodingFailure`."""
    word = np.asarray(received, dtype=np.uint8)
    if word.shape != (code.n,):
        raise ValueError(f"expected {code.n} symbols, got shape {word.shape}")
    decoded, ok = hard_decode_batch(code, word[None, :])
    if not ok[0]:
        raise DecodingFailure("no codeword within the decoding radius")
    return decoded[0]
