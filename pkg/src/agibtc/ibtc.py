"""
Irregular AG block turbo code: non-uniform repetition, a per-frame random
interleaver and a single systematic AG encoder.

Only the original K_t information symbols and the P_t parity symbols are
transmitted.  The receiver repeats the channel reliabilities of the
information symbols the same way, runs the Chase SISO decoder on every
codeword, and feeds each copy of a symbol the extrinsic information of its
sibling copies as a priori for the next iteration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .hermitian import AgCode, encode
from .siso import ChaseConfig, chase_decode_batch, hard_decision, normalize

# degree profile per code id: the paper's profile for (64,49), and a
# 2.2-average profile for (64,44) that gives rate 1/2
DEFAULT_PROFILES = {
    "ag64_49": ((2, 0.85), (3, 0.10), (9, 0.05)),
    "ag64_44": ((2, 0.90), (4, 0.10)),
}
DEFAULT_KT = {"ag64_49": 980, "ag64_44": 440}


class ProfileError(ValueError):
    pass


@dataclass(frozen=True)
class FrameLayout:
    n: int
    k: int
    kt: int
    ht: int
    codewords: int
    pt: int
    nt: int
    rate: Fraction
    moves: int = 0  # symbols shifted between groups to make ht a multiple of k


@dataclass(frozen=True, eq=False)
class DegreeProfile:
    degrees: tuple[int, ...]
    shares: tuple[float, ...]
    counts: tuple[int, ...]
    layout: FrameLayout
    # repeated position h carries original symbol source[h]
    source: np.ndarray = field(repr=False)

    @property
    def kt(self) -> int:
        return self.layout.kt

    def degree_of(self) -> np.ndarray:
        """Degree of each original information symbol."""
        return np.repeat(np.array(self.degrees), np.array(self.counts))


def parse_profile(text: str) -> tuple[tuple[int, float], ...]:
    """Parse ``"2:0.85, 3:0.10, 9:0.05"`` into (degree, share) pairs."""
    entries = []
    for item in text.replace(";", ",").split(","):
        item = item.strip()
        if not item:
            continue
        try:
            deg, share = item.split(":")
            entries.append((int(deg), float(share)))
        except ValueError:
            raise ProfileError(f"bad profile entry {item!r}, expected degree:share") from None
    if not entries:
        raise ProfileError("empty degree profile")
    return tuple(entries)


def _largest_remainder(shares: list[float], total: int) -> list[int]:
    raw = [s * total for s in shares]
    counts = [int(np.floor(r + 1e-9)) for r in raw]
    short = total - sum(counts)
    order = sorted(range(len(shares)), key=lambda j: (-(raw[j] - counts[j]), j))
    for j in order[:short]:
        counts[j] += 1
    return counts


def resolve_profile(entries, kt: int, code: AgCode, strict: bool = False) -> DegreeProfile:
    """Turn (degree, share) pairs into integer group sizes and a frame layout."""
    entries = sorted((int(d), float(s)) for d, s in entries)
    degrees = [d for d, _ in entries]
    shares = [s for _, s in entries]
    if kt < 1:
        raise ProfileError("kt must be >= 1")
    if any(s <= 0 for s in shares) or abs(sum(shares) - 1.0) > 1e-6:
        raise ProfileError(f"shares must be positive and sum to 1, got {shares}")
    if any(d < 2 for d in degrees):
        raise ProfileError("every degree must be >= 2")
    if len(set(degrees)) != len(degrees):
        raise ProfileError("degrees must be distinct")
    if len(degrees) > 3:
        raise ProfileError("at most 3 distinct degrees are allowed")
    if strict:
        share2 = dict(entries).get(2, 0.0)
        if not 0.75 <= share2 <= 0.95:
            raise ProfileError(f"degree-2 share {share2} outside [0.75, 0.95]")

    counts = _largest_remainder(shares, kt)
    moves = 0
    while sum(d * f for d, f in zip(degrees, counts)) % code.k:
        if len(degrees) < 2 or counts[0] == 0 or moves >= kt:
            raise ProfileError(f"cannot make the repeated length a multiple of k={code.k}")
        counts[0] -= 1
        counts[1] += 1
        moves += 1

    ht = sum(d * f for d, f in zip(degrees, counts))
    ncw = ht // code.k
    pt = ncw * (code.n - code.k)
    layout = FrameLayout(
        n=code.n, k=code.k, kt=kt, ht=ht, codewords=ncw, pt=pt, nt=kt + pt,
        rate=Fraction(kt, kt + pt), moves=moves,
    )
    source = []
    start = 0
    for d, f in zip(degrees, counts):
        group = np.arange(start, start + f)
        source.extend([group] * d)
        start += f
    source = np.concatenate(source) if source else np.zeros(0, np.intp)
    source.setflags(write=False)
    return DegreeProfile(tuple(degrees), tuple(shares), tuple(counts), layout, source)


def repeat_nonuniform(info, profile: DegreeProfile) -> np.ndarray:
    """Group-major repetition: each group's block of symbols, d_j times over."""
    info = np.asarray(info)
    if info.shape[0] != profile.kt:
        raise ValueError(f"expected {profile.kt} symbols, got {info.shape[0]}")
    return info[profile.source]


@dataclass(frozen=True, eq=False)
class Interleaver:
    perm: np.ndarray  # interleaved[j] = repeated[perm[j]]
    seed: tuple

    def interleave(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(x)[self.perm]

    def deinterleave(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x)
        out = np.empty_like(x)
        out[self.perm] = x
        return out


def make_interleaver(length: int, master_seed: int, frame_index: int) -> Interleaver:
    """Random permutation derived from (master seed, frame index) only."""
    ss = np.random.SeedSequence(entropy=master_seed, spawn_key=(frame_index, 1))
    perm = np.random.Generator(np.random.PCG64(ss)).permutation(length)
    perm.setflags(write=False)
    return Interleaver(perm, (master_seed, frame_index))


@dataclass(frozen=True, eq=False)
class TxFrame:
    info: np.ndarray
    parity: np.ndarray

    @property
    def symbols(self) -> np.ndarray:
        return np.concatenate([self.info, self.parity])


def encode_frame(info, profile: DegreeProfile, code: AgCode, interleaver: Interleaver) -> TxFrame:
    layout = profile.layout
    info = np.asarray(info, dtype=np.uint8)
    if info.shape != (layout.kt,) or len(interleaver.perm) != layout.ht or layout.k != code.k:
        raise ValueError("frame, interleaver and code do not match the layout")
    blocks = interleaver.interleave(repeat_nonuniform(info, profile)).reshape(layout.codewords, code.k)
    codewords = encode(code, blocks)
    parity = codewords[:, code.parity_positions].reshape(-1)
    return TxFrame(info.copy(), parity)


@dataclass
class DecoderState:
    channel_info: np.ndarray  # (kt, 16)
    channel_parity: np.ndarray  # (pt, 16)
    repeated: np.ndarray  # (ht, 16), channel info copied to every repetition, interleaved
    apriori: np.ndarray  # (ht, 16), interleaved order
    extrinsic: np.ndarray  # (ht, 16), repetition order
    iteration: int = 0

    @classmethod
    def from_channel(cls, channel_info, channel_parity, profile: DegreeProfile,
                     interleaver: Interleaver) -> "DecoderState":
        layout = profile.layout
        channel_info = normalize(channel_info)
        channel_parity = normalize(channel_parity)
        if channel_info.shape != (layout.kt, 16) or channel_parity.shape != (layout.pt, 16):
            raise ValueError("channel reliabilities do not match the layout")
        repeated = interleaver.interleave(repeat_nonuniform(channel_info, profile))
        zeros = np.zeros((layout.ht, 16))
        return cls(channel_info, channel_parity, repeated, zeros, zeros.copy())


@dataclass
class FrameDiagnostics:
    decisions: list = field(default_factory=list)  # info estimate after each iteration
    chase_failures: list = field(default_factory=list)
    chase_calls: int = 0
    candidates: int = 0  # total hard decodes performed
    iterations: int = 0


def aggregate_extrinsic(extrinsic: np.ndarray, profile: DegreeProfile) -> tuple[np.ndarray, np.ndarray]:
    """Repetition-node update in the log domain.

    ``extrinsic`` holds one vector per copy in repetition order.  Returns the
    new a priori of every copy (sum over its sibling copies) and the total
    over all copies of each original symbol.
    """
    total = np.zeros((profile.kt, extrinsic.shape[-1]))
    np.add.at(total, profile.source, extrinsic)
    return total[profile.source] - extrinsic, total


def decode_frame(state: DecoderState, code: AgCode, profile: DegreeProfile,
                 interleaver: Interleaver, cfg: ChaseConfig | None = None,
                 iters: int = 8, early_stop: bool = False) -> tuple[np.ndarray, FrameDiagnostics]:
    """Iteratively decode one frame; returns the K_t info estimate and diagnostics."""
    if iters < 1:
        raise ValueError("iters must be >= 1")
    cfg = cfg or ChaseConfig()
    layout = profile.layout
    ncw, k = layout.codewords, code.k
    info_pos, parity_pos = code.info_positions, code.parity_positions
    parity_soft = state.channel_parity.reshape(ncw, code.n - k, 16)
    diag = FrameDiagnostics()
    total = np.zeros((layout.kt, 16))

    for it in range(iters):
        soft = np.empty((ncw, code.n, 16))
        soft[:, info_pos] = (state.repeated + state.apriori).reshape(ncw, k, 16)
        soft[:, parity_pos] = parity_soft
        res = chase_decode_batch(code, soft, cfg, it)
        diag.chase_calls += ncw
        diag.candidates += ncw * res.n_candidates
        diag.chase_failures.append(int(res.failed.sum()))

        state.extrinsic = interleaver.deinterleave(res.extrinsic[:, info_pos].reshape(-1, 16))
        new_apriori, total = aggregate_extrinsic(state.extrinsic, profile)
        state.apriori = interleaver.interleave(normalize(new_apriori))
        state.iteration = it + 1
        decision = hard_decision(state.channel_info + total)
        diag.decisions.append(decision)
        diag.iterations = it + 1

        if early_stop and not res.failed.any():
            copies = interleaver.deinterleave(res.decision[:, info_pos].reshape(-1))
            if np.array_equal(copies, decision[profile.source]):
                break

    return diag.decisions[-1], diag
