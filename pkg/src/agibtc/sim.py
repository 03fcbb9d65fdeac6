"""
Seeded Monte Carlo BER/FER sweeps over Eb/N0.

Frame ``f`` draws all of its randomness (information symbols, interleaver,
fading and noise) from ``SeedSequence(master_seed, spawn_key=(f, stream))``,
so a point's result does not depend on how frames are scheduled across
workers.  Frames are accumulated in index order and the stop rule is checked
after every frame.
"""

from __future__ import annotations

import csv
import io
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from . import btc, ibtc, modem
from .channel import ChannelParams, transmit
from .hermitian import CODE_IDS, code_from_id
from .siso import ChaseConfig

log = logging.getLogger(__name__)

SCHEMES = ("ibtc", "btc", "uncoded")
CSV_HEADER = (
    "ebn0_db", "ber", "fer", "frames", "info_bits", "bit_errors",
    "frame_errors", "mean_iters", "chase_failures", "complexity",
)
CSV_SCHEMA_VERSION = 1

# frame randomness streams
_INFO, _INTERLEAVER, _CHANNEL = 0, 1, 2


@dataclass(frozen=True)
class SimConfig:
    scheme: str = "ibtc"
    code: str = "ag64_49"
    profile: tuple | None = None  # (degree, share) pairs; None -> code default
    kt: int | None = None
    modulation: str = "bpsk"
    demapper: str = "exact"
    ebn0_start: float = 0.0
    ebn0_stop: float = 0.0
    ebn0_step: float = 1.0
    iterations: int = 8
    chase_p: int = 4
    chase_s: int = 2
    early_stop: bool = False
    min_bit_errors: int | None = 100
    max_frames: int | None = 100_000
    max_seconds: float | None = 600.0
    seed: int = 0
    workers: int = 1
    uncoded_bits: int = 10_000

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")
        if self.code not in CODE_IDS:
            raise ValueError(f"code must be one of {sorted(CODE_IDS)}, got {self.code!r}")
        if self.modulation not in modem.SCHEMES:
            raise ValueError(f"modulation must be one of {list(modem.SCHEMES)}")
        if self.demapper not in ("exact", "maxlog"):
            raise ValueError("demapper must be 'exact' or 'maxlog'")
        if self.ebn0_step <= 0 or self.ebn0_stop < self.ebn0_start:
            raise ValueError("empty Eb/N0 sweep")
        if self.min_bit_errors is None and self.max_frames is None and self.max_seconds is None:
            raise ValueError("stop rule needs at least one bound")
        if self.iterations < 1 or self.workers < 1 or self.uncoded_bits < 1:
            raise ValueError("iterations, workers and uncoded_bits must be >= 1")
        ChaseConfig(self.chase_p, self.chase_s)
        if self.profile is not None:
            object.__setattr__(self, "profile", tuple((int(d), float(s)) for d, s in self.profile))

    @property
    def sweep(self) -> list[float]:
        n = int(math.floor((self.ebn0_stop - self.ebn0_start) / self.ebn0_step + 1e-9)) + 1
        return [round(self.ebn0_start + i * self.ebn0_step, 10) for i in range(n)]

    @property
    def chase(self) -> ChaseConfig:
        return ChaseConfig(self.chase_p, self.chase_s)

    def resolved_profile(self):
        entries = self.profile or ibtc.DEFAULT_PROFILES[self.code]
        kt = self.kt or ibtc.DEFAULT_KT[self.code]
        return ibtc.resolve_profile(entries, kt, code_from_id(self.code))

    def to_dict(self) -> dict:
        d = asdict(self)
        d["profile"] = None if self.profile is None else [list(e) for e in self.profile]
        return d


@dataclass
class FrameStats:
    info_bits: int
    bit_errors: int
    iterations: int = 0
    chase_failures: int = 0
    complexity: int = 0  # hard decodes performed by the Chase decoders


@dataclass
class PointResult:
    ebn0_db: float
    frames: int = 0
    info_bits: int = 0
    bit_errors: int = 0
    frame_errors: int = 0
    iterations: int = 0
    chase_failures: int = 0
    complexity: int = 0
    elapsed: float = 0.0

    @property
    def ber(self) -> float:
        return self.bit_errors / self.info_bits if self.info_bits else 0.0

    @property
    def fer(self) -> float:
        return self.frame_errors / self.frames if self.frames else 0.0

    @property
    def ber_ci(self) -> float:
        """95% normal-approximation half-width of the BER estimate."""
        if not self.info_bits:
            return float("inf")
        p = self.ber
        return 1.96 * math.sqrt(p * (1 - p) / self.info_bits)

    @property
    def mean_iters(self) -> float:
        return self.iterations / self.frames if self.frames else 0.0

    @property
    def complexity_per_bit(self) -> float:
        return self.complexity / self.info_bits if self.info_bits else 0.0

    def add(self, fs: FrameStats) -> None:
        self.frames += 1
        self.info_bits += fs.info_bits
        self.bit_errors += fs.bit_errors
        self.frame_errors += fs.bit_errors > 0
        self.iterations += fs.iterations
        self.chase_failures += fs.chase_failures
        self.complexity += fs.complexity

    def csv_row(self) -> list[str]:
        return [
            _fmt(self.ebn0_db), _fmt(self.ber), _fmt(self.fer), str(self.frames),
            str(self.info_bits), str(self.bit_errors), str(self.frame_errors),
            _fmt(self.mean_iters), str(self.chase_failures), _fmt(self.complexity_per_bit),
        ]


@dataclass
class SimResult:
    config: SimConfig
    points: list[PointResult] = field(default_factory=list)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for p in self.points:
            w.writerow(p.csv_row())
        return buf.getvalue()

    def curve(self) -> tuple[np.ndarray, np.ndarray]:
        return (np.array([p.ebn0_db for p in self.points]), np.array([p.ber for p in self.points]))


def _fmt(x: float) -> str:
    return format(float(x), ".10g")


def frame_rngs(seed: int, frame_index: int) -> tuple[np.random.Generator, np.random.Generator]:
    def gen(stream):
        ss = np.random.SeedSequence(entropy=seed, spawn_key=(frame_index, stream))
        return np.random.Generator(np.random.PCG64(ss))
    return gen(_INFO), gen(_CHANNEL)


def _channel_llrs(cfg: SimConfig, bits: np.ndarray, rate: float, ebn0_db: float, rng) -> np.ndarray:
    const = modem.constellation(cfg.modulation)
    params = ChannelParams(ebn0_db, rate, const.bits_per_symbol)
    obs = transmit(modem.modulate(const, bits), params, rng)
    llr = modem.demodulate(const, obs.y, obs.h, params.n0, maxlog=cfg.demapper == "maxlog")
    return llr.reshape(-1)[: len(bits)]  # drop pad bits


def simulate_frame(cfg: SimConfig, ebn0_db: float, frame_index: int) -> FrameStats:
    info_rng, chan_rng = frame_rngs(cfg.seed, frame_index)

    if cfg.scheme == "uncoded":
        bits = info_rng.integers(0, 2, cfg.uncoded_bits, dtype=np.uint8)
        llr = _channel_llrs(cfg, bits, 1.0, ebn0_db, chan_rng)
        return FrameStats(len(bits), int((modem.hard_bits(llr) != bits).sum()))

    code = code_from_id(cfg.code)
    if cfg.scheme == "ibtc":
        profile = cfg.resolved_profile()
        layout = profile.layout
        info = info_rng.integers(0, 16, layout.kt, dtype=np.uint8)
        il = ibtc.make_interleaver(layout.ht, cfg.seed, frame_index)
        tx = ibtc.encode_frame(info, profile, code, il)
        bits = modem.symbols_to_bits(tx.symbols)
        llr = _channel_llrs(cfg, bits, float(layout.rate), ebn0_db, chan_rng)
        rel = modem.bits_to_symbol_reliability(llr.reshape(-1, 4))
        state = ibtc.DecoderState.from_channel(rel[: layout.kt], rel[layout.kt:], profile, il)
        est, diag = ibtc.decode_frame(state, code, profile, il, cfg.chase, cfg.iterations, cfg.early_stop)
        failures = sum(diag.chase_failures)
    else:
        info = info_rng.integers(0, 16, (code.k, code.k), dtype=np.uint8)
        grid = btc.encode_product(code, info)
        bits = modem.symbols_to_bits(grid.reshape(-1))
        llr = _channel_llrs(cfg, bits, float(btc.product_rate(code)), ebn0_db, chan_rng)
        rel = modem.bits_to_symbol_reliability(llr.reshape(-1, 4)).reshape(code.n, code.n, 16)
        est, diag = btc.decode_product(rel, code, cfg.chase, cfg.iterations, cfg.early_stop)
        failures = sum(diag.row_failures) + sum(diag.column_failures)

    sent = modem.symbols_to_bits(info.reshape(-1))
    errors = int((modem.symbols_to_bits(est.reshape(-1)) != sent).sum())
    return FrameStats(len(sent), errors, diag.iterations, failures, diag.candidates)


def _frame_task(args) -> FrameStats:
    return simulate_frame(*args)


def _done(cfg: SimConfig, pt: PointResult, started: float) -> bool:
    if cfg.min_bit_errors is not None and pt.bit_errors >= cfg.min_bit_errors:
        return True
    if cfg.max_frames is not None and pt.frames >= cfg.max_frames:
        return True
    return cfg.max_seconds is not None and time.monotonic() - started >= cfg.max_seconds


def run_point(cfg: SimConfig, ebn0_db: float, pool: ProcessPoolExecutor | None = None) -> PointResult:
    pt = PointResult(float(ebn0_db))
    started = time.monotonic()
    chunk = 1 if pool is None else 2 * cfg.workers
    next_frame = 0
    while True:
        tasks = [(cfg, ebn0_db, f) for f in range(next_frame, next_frame + chunk)]
        next_frame += chunk
        stats = map(_frame_task, tasks) if pool is None else pool.map(_frame_task, tasks)
        for fs in stats:
            pt.add(fs)
            if _done(cfg, pt, started):
                pt.elapsed = time.monotonic() - started
                return pt


def run_sweep(cfg: SimConfig, progress=None) -> SimResult:
    """Run every Eb/N0 point of the sweep; ``progress(point)`` is called after each."""
    result = SimResult(cfg)
    pool = ProcessPoolExecutor(cfg.workers) if cfg.workers > 1 else None
    try:
        for ebn0 in cfg.sweep:
            pt = run_point(cfg, ebn0, pool)
            result.points.append(pt)
            log.info("%s %s %s Eb/N0=%.2f dB: ber=%.3e (%d errors / %d bits, %d frames, %.1fs)",
                     cfg.scheme, cfg.code, cfg.modulation, ebn0, pt.ber, pt.bit_errors,
                     pt.info_bits, pt.frames, pt.elapsed)
            if progress is not None:
                progress(pt)
    finally:
        if pool is not None:
            pool.shutdown()
    return result


def with_overrides(cfg: SimConfig, **changes) -> SimConfig:
    return replace(cfg, **changes)


def bracket_target(cfg: SimConfig, target_ber: float, start: float, step: float = 1.0,
                   min_errors: int = 300, max_frames: int = 1000, resolution: float = 0.25,
                   min_step: float = 0.125, progress=None) -> list[PointResult]:
    """Measure just enough of a curve to locate ``target_ber`` precisely.

    Every point runs until ``min_errors`` bit errors or ``max_frames``
    frames; only points reaching ``min_errors`` are usable.  The walk moves
    up from ``start`` in ``step`` dB (halving the step when a point runs out
    of frames first) until usable points bracket the target, then bisects
    the bracket down to ``resolution`` dB.  Returns the usable points in
    Eb/N0 order.  The visited grid depends only on the measurements, so the
    result is as deterministic as :func:`run_point`.
    """
    run_cfg = replace(cfg, min_bit_errors=min_errors, max_frames=max_frames, max_seconds=None)
    seen: dict[float, PointResult] = {}

    def measure(x):
        x = round(x, 6)
        if x not in seen:
            seen[x] = run_point(run_cfg, x)
            if progress is not None:
                progress(seen[x])
        pt = seen[x]
        return pt if pt.bit_errors >= min_errors else None

    x = start
    pt = measure(x)
    if pt is None:
        raise ValueError(f"too few errors at {x} dB to start the walk")
    hi = None
    while pt.ber <= target_ber:  # started past the target, walk down
        hi = x
        x -= step
        pt = measure(x)
        if pt is None:
            raise ValueError(f"too few errors at {x} dB")
    lo = x

    dead = math.inf  # lowest Eb/N0 seen without enough errors
    h = step
    while hi is None:
        if h < min_step:
            raise ValueError(f"could not bracket BER {target_ber:g} above {lo} dB")
        x = lo + h
        if x >= dead:
            h /= 2
            continue
        pt = measure(x)
        if pt is None:
            dead = x
            h /= 2
        elif pt.ber > target_ber:
            lo = x
        else:
            hi = x

    while hi - lo > resolution + 1e-9:
        pt = measure((lo + hi) / 2)
        if pt is None:
            break
        if pt.ber > target_ber:
            lo = round((lo + hi) / 2, 6)
        else:
            hi = round((lo + hi) / 2, 6)

    return sorted((p for p in seen.values() if p.bit_errors >= min_errors), key=lambda p: p.ebn0_db)


def _crossing(x, ber, target: float) -> float:
    x = np.asarray(x, dtype=float)
    ber = np.asarray(ber, dtype=float)
    for i in range(len(x) - 1):
        hi, lo = ber[i], ber[i + 1]
        if hi >= target >= lo and hi > 0 and lo > 0:
            if hi == lo:
                return float(x[i])
            frac = (np.log10(hi) - np.log10(target)) / (np.log10(hi) - np.log10(lo))
            return float(x[i] + frac * (x[i + 1] - x[i]))
    raise ValueError(f"curve does not bracket BER {target:g}")


def gain_at_ber(curve_a, curve_b, target_ber: float) -> float:
    """Eb/N0 advantage of curve ``a`` over curve ``b`` at ``target_ber`` (dB).

    Curves are (ebn0_db, ber) pairs of arrays sorted by Eb/N0; each is
    interpolated linearly in log10(BER).
    """
    return _crossing(*curve_b, target_ber) - _crossing(*curve_a, target_ber)


def gain_interval(points_a: list[PointResult], points_b: list[PointResult],
                  target_ber: float) -> tuple[float, float, float]:
    """Gain of ``a`` over ``b`` with bounds from the 95% BER intervals."""

    def shifted(points, sign):
        x = np.array([p.ebn0_db for p in points])
        ber = np.array([max(p.ber + sign * p.ber_ci, 1e-300) if p.bit_errors else 0.0
                        for p in points])
        return x, ber

    a = shifted(points_a, 0)
    b = shifted(points_b, 0)
    gain = gain_at_ber(a, b, target_ber)
    low = gain_at_ber(shifted(points_a, +1), shifted(points_b, -1), target_ber)
    high = gain_at_ber(shifted(points_a, -1), shifted(points_b, +1), target_ber)
    return gain, low, high
