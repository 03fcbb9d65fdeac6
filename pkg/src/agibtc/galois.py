"""
GF(2^4) arithmetic.

Elements are integers in [0, 15]; bit i is the coefficient of alpha^i in the
polynomial basis.  The field is generated by the primitive polynomial
x^4 + x + 1.  Scalar helpers take Python ints, and the ``*_arr`` / matrix
helpers work elementwise on integer numpy arrays through the lookup tables.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

ORDER = 16
PRIMITIVE_POLY = 0b10011  # x^4 + x + 1


@dataclass(frozen=True)
class FieldContext:
    primitive_poly: int
    exp_table: np.ndarray  # exp_table[i] = alpha^i, i in [0, 15)
    log_table: np.ndarray  # log_table[v] for v != 0; log_table[0] is unused (-1)
    mul_table: np.ndarray  # 16 x 16
    inv_table: np.ndarray  # inv_table[0] is unused (0)


def build_field(primitive_poly: int = PRIMITIVE_POLY) -> FieldContext:
    exp = np.zeros(ORDER - 1, dtype=np.uint8)
    log = np.full(ORDER, -1, dtype=np.int64)
    x = 1
    for i in range(ORDER - 1):
        exp[i] = x
        log[x] = i
        x <<= 1
        if x & ORDER:
            x ^= primitive_poly
    if x != 1 or len(set(exp.tolist())) != ORDER - 1:
        raise ValueError(f"0b{primitive_poly:b} is not primitive for GF(16)")

    mul = np.zeros((ORDER, ORDER), dtype=np.uint8)
    nz = np.arange(1, ORDER)
    mul[1:, 1:] = exp[(log[nz][:, None] + log[nz][None, :]) % (ORDER - 1)]
    inv = np.zeros(ORDER, dtype=np.uint8)
    inv[1:] = exp[(-log[nz]) % (ORDER - 1)]
    for t in (exp, log, mul, inv):
        t.setflags(write=False)
    return FieldContext(primitive_poly, exp, log, mul, inv)


GF = build_field()
MUL = GF.mul_table
INV = GF.inv_table


def add(a: int, b: int) -> int:
    return a ^ b


def mul(a: int, b: int) -> int:
    return int(MUL[a, b])


def inv(a: int) -> int:
    if a == 0:
        raise ZeroDivisionError("zero has no inverse in GF(16)")
    return int(INV[a])


def div(a: int, b: int) -> int:
    return mul(a, inv(b))


def pow(a: int, e: int) -> int:  # noqa: A001 - mirrors the field operation name
    if a == 0:
        if e < 0:
            raise ZeroDivisionError("negative power of zero")
        return 1 if e == 0 else 0
    return int(GF.exp_table[(int(GF.log_table[a]) * e) % (ORDER - 1)])


def mul_arr(a, b) -> np.ndarray:
    """Elementwise product of broadcastable integer arrays."""
    return MUL[np.asarray(a, dtype=np.intp), np.asarray(b, dtype=np.intp)]


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product over GF(16), batched over leading axes of ``a``.

    ``a`` has shape (..., r, s) and ``b`` shape (s, c).
    """
    a = np.asarray(a, dtype=np.uint8)
    b = np.asarray(b, dtype=np.uint8)
    # scaled[v, s, c] = v * b[s, c]; gathered[..., r, s, c] = a[..., r, s] * b[s, c]
    scaled = MUL[:, b]
    gathered = scaled[a, np.arange(b.shape[0])]
    return np.bitwise_xor.reduce(gathered, axis=-2)


def matvec(a: np.ndarray, m: np.ndarray) -> np.ndarray:
    """Row vectors times matrix: (..., s) x (s, c) -> (..., c)."""
    a = np.asarray(a, dtype=np.uint8)
    return matmul(a[..., None, :], m)[..., 0, :]


def row_reduce(m: np.ndarray, ncols: int | None = None):
    """Reduced row echelon form over GF(16), batched over leading axes.

    Pivots are searched left to right in the first ``ncols`` columns (all
    columns by default); within a column the topmost eligible row wins.

    Returns
    -------
    rref : ndarray, same shape as ``m``
    pivots : ndarray of shape (..., min(rows, ncols)), pivot column per
        echelon row, -1 where the row has no pivot.
    rank : ndarray of shape (...)
    """
    m = np.array(m, dtype=np.uint8, copy=True)
    batch_shape = m.shape[:-2]
    rows, cols = m.shape[-2:]
    if ncols is None:
        ncols = cols
    m = m.reshape(-1, rows, cols)
    nb = m.shape[0]
    b_idx = np.arange(nb)
    rank = np.zeros(nb, dtype=np.intp)
    pivots = np.full((nb, min(rows, ncols)), -1, dtype=np.intp)
    row_ids = np.arange(rows)

    for c in range(ncols):
        eligible = (m[:, :, c] != 0) & (row_ids[None, :] >= rank[:, None])
        has = eligible.any(axis=1)
        if not has.any():
            continue
        sel = b_idx[has]
        piv_row = eligible[sel].argmax(axis=1)
        r = rank[sel]
        # swap pivot row into place
        top = m[sel, r].copy()
        m[sel, r] = m[sel, piv_row]
        m[sel, piv_row] = top
        # scale to a unit pivot
        scale = INV[m[sel, r, c]]
        m[sel, r] = MUL[scale[:, None], m[sel, r]]
        # clear column c in every other row
        factors = m[sel, :, c].copy()
        factors[np.arange(len(sel)), r] = 0
        m[sel] ^= MUL[factors[:, :, None], m[sel, r][:, None, :]]
        pivots[sel, r] = c
        rank[sel] += 1
        if (rank >= rows).all():
            break

    return (
        m.reshape(*batch_shape, rows, cols),
        pivots.reshape(*batch_shape, -1),
        rank.reshape(batch_shape),
    )


def rank(m: np.ndarray) -> int:
    return int(row_reduce(m)[2])


def solve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve ``a @ x = b`` for square nonsingular ``a`` over GF(16)."""
    a = np.asarray(a, dtype=np.uint8)
    n = a.shape[0]
    aug = np.concatenate([a, np.asarray(b, dtype=np.uint8).reshape(n, -1)], axis=1)
    red, piv, r = row_reduce(aug, ncols=n)
    if int(r) < n:
        raise np.linalg.LinAlgError("singular matrix over GF(16)")
    return red[:, n:].reshape(np.shape(b))
