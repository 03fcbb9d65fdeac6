"""
Regular AG block turbo (product) code: the same AG code on rows and columns.

The k x k information block sits at the (info_positions x info_positions)
sub-grid of the 64 x 64 block.  Decoding alternates row and column
half-iterations of the Chase SISO decoder, each using the other direction's
extrinsic output as a priori information.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .hermitian import AgCode, encode, is_codeword
from .siso import ChaseConfig, chase_decode_batch, hard_decision, normalize


def product_rate(code: AgCode) -> Fraction:
    return Fraction(code.k, code.n) ** 2


def encode_product(code: AgCode, info) -> np.ndarray:
    """Encode a k x k block into a 64 x 64 grid of AG codewords."""
    info = np.asarray(info, dtype=np.uint8)
    if info.shape != (code.k, code.k):
        raise ValueError(f"expected a {code.k}x{code.k} block, got {info.shape}")
    grid = np.zeros((code.n, code.n), dtype=np.uint8)
    grid[code.info_positions] = encode(code, info)
    grid[:] = encode(code, grid[code.info_positions].T).T
    return grid


def extract_info(code: AgCode, grid) -> np.ndarray:
    return np.asarray(grid)[np.ix_(code.info_positions, code.info_positions)]


def verify_product(code: AgCode, grid) -> bool:
    grid = np.asarray(grid)
    return bool(is_codeword(code, grid).all() and is_codeword(code, grid.T).all())


@dataclass
class ProductDiagnostics:
    row_failures: list = field(default_factory=list)
    column_failures: list = field(default_factory=list)
    chase_calls: int = 0
    candidates: int = 0
    iterations: int = 0


def decode_product(soft, code: AgCode, cfg: ChaseConfig | None = None, iters: int = 8,
                   early_stop: bool = False) -> tuple[np.ndarray, ProductDiagnostics]:
    """Iteratively decode a (64, 64, 16) grid of channel reliabilities."""
    if iters < 1:
        raise ValueError("iters must be >= 1")
    cfg = cfg or ChaseConfig()
    channel = normalize(soft)
    if channel.shape != (code.n, code.n, 16):
        raise ValueError(f"expected soft grid of shape ({code.n}, {code.n}, 16)")
    w_col = np.zeros_like(channel)
    w_row = np.zeros_like(channel)
    diag = ProductDiagnostics()

    for it in range(iters):
        rows = chase_decode_batch(code, channel + w_col, cfg, it)
        w_row = rows.extrinsic
        cols = chase_decode_batch(code, np.swapaxes(channel + w_row, 0, 1), cfg, it)
        w_col = np.swapaxes(cols.extrinsic, 0, 1)

        diag.row_failures.append(int(rows.failed.sum()))
        diag.column_failures.append(int(cols.failed.sum()))
        diag.chase_calls += 2 * code.n
        diag.candidates += code.n * (rows.n_candidates + cols.n_candidates)
        diag.iterations = it + 1
        if early_stop and not rows.failed.any() and not cols.failed.any():
            if np.array_equal(rows.decision, cols.decision.T):
                break

    decision = hard_decision(channel + w_row + w_col)
    return extract_info(code, decision), diag
