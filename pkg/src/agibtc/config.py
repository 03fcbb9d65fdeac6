"""
Flat ``section.key = value`` configuration files for simulation runs.

Blank lines and ``#`` comments are ignored.  Recognized keys::

    scheme             ibtc | btc | uncoded
    code               ag64_49 | ag64_44
    profile            degree:share list, e.g. 2:0.85, 3:0.10, 9:0.05
    kt                 information symbols per IBTC frame
    modulation         bpsk | qpsk | 16qam | 64qam
    demapper           exact | maxlog
    iterations         decoder iterations
    chase.p            least-reliable positions searched
    chase.s            alternatives per searched position
    ebn0.start / ebn0.stop / ebn0.step   sweep in dB
    stop.min_bit_errors / stop.max_frames / stop.max_seconds   (or "none")
    early_stop         true | false
    seed               master seed
    workers            worker processes
    uncoded.frame_bits bits per uncoded frame
"""

from __future__ import annotations

from dataclasses import fields

from .ibtc import ProfileError, parse_profile
from .sim import SimConfig


class ConfigError(ValueError):
    pass


def _optional(cast):
    def parse(v: str):
        return None if v.strip().lower() in ("none", "") else cast(v)
    return parse


def _bool(v: str) -> bool:
    v = v.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {v!r}")


KEYS = {
    "scheme": ("scheme", str),
    "code": ("code", str),
    "profile": ("profile", parse_profile),
    "kt": ("kt", _optional(int)),
    "modulation": ("modulation", str.lower),
    "demapper": ("demapper", str.lower),
    "iterations": ("iterations", int),
    "chase.p": ("chase_p", int),
    "chase.s": ("chase_s", int),
    "ebn0.start": ("ebn0_start", float),
    "ebn0.stop": ("ebn0_stop", float),
    "ebn0.step": ("ebn0_step", float),
    "stop.min_bit_errors": ("min_bit_errors", _optional(int)),
    "stop.max_frames": ("max_frames", _optional(int)),
    "stop.max_seconds": ("max_seconds", _optional(float)),
    "early_stop": ("early_stop", _bool),
    "seed": ("seed", int),
    "workers": ("workers", int),
    "uncoded.frame_bits": ("uncoded_bits", int),
}

assert {f for f, _ in KEYS.values()} <= {f.name for f in fields(SimConfig)}


def parse_value(key: str, value: str, where: str = ""):
    if key not in KEYS:
        raise ConfigError(f"{where}unknown key {key!r}")
    name, cast = KEYS[key]
    try:
        return name, cast(value.strip())
    except (ValueError, ProfileError) as exc:
        raise ConfigError(f"{where}bad value for {key!r}: {exc}") from None


def parse_config(text: str, overrides: dict[str, str] | None = None) -> SimConfig:
    """Build a :class:`SimConfig` from config text plus ``key -> value`` overrides."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = line.split("=", 1)
        name, parsed = parse_value(key.strip(), value, f"line {lineno}: ")
        values[name] = parsed
    for key, value in (overrides or {}).items():
        name, parsed = parse_value(key, value, "override: ")
        values[name] = parsed
    try:
        return SimConfig(**values)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def dump_config(cfg: SimConfig) -> str:
    d = cfg.to_dict()
    lines = []
    for key, (name, _) in KEYS.items():
        v = d[name]
        if name == "profile":
            if v is None:
                continue
            v = ", ".join(f"{deg}:{share:g}" for deg, share in v)
        elif v is None:
            v = "none"
        elif isinstance(v, bool):
            v = str(v).lower()
        lines.append(f"{key} = {v}")
    return "\n".join(lines) + "\n"
