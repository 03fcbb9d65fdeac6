"""
Command line entry point: ``agibtc <command> ...``.

Commands: code-info, encode, decode, simulate, plot, compare.
Exit status is 0 on success and 1 on any error (message on stderr).
"""

from __future__ import annotations

import argparse
import datetime
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__, sim
from .config import ConfigError, KEYS, dump_config, parse_config
from .hermitian import CODE_IDS, DecodingFailure, code_from_id, encode, hard_decode
from .plot import CurveError, read_curve, render_svg


class CliError(Exception):
    pass


def _code(code_id: str):
    if code_id not in CODE_IDS:
        raise CliError(f"unknown code id {code_id!r}; known: {', '.join(sorted(CODE_IDS))}")
    return code_from_id(code_id)


def _parse_hex(text: str, length: int, what: str) -> np.ndarray:
    text = "".join(text.split())
    if len(text) != length:
        raise CliError(f"{what} needs {length} hex digits, got {len(text)}")
    try:
        return np.array([int(ch, 16) for ch in text], dtype=np.uint8)
    except ValueError:
        raise CliError(f"{what} is not a hex string: {text!r}") from None


def _hex(symbols) -> str:
    return "".join(format(int(v), "x") for v in symbols)


def cmd_code_info(args) -> int:
    code = _code(args.code)
    print(f"code         {code.name}")
    print(f"n            {code.n}")
    print(f"k            {code.k}")
    print(f"m            {code.m}")
    print(f"g            {code.g}")
    print(f"d*           {code.designed_distance}")
    print(f"t            {code.t}")
    print(f"rate         {code.rate:.6f}")
    print(f"info symbols {' '.join(map(str, code.info_positions))}")
    return 0


def cmd_encode(args) -> int:
    code = _code(args.code)
    info = _parse_hex(args.info, code.k, "info word")
    print(_hex(encode(code, info)))
    return 0


def cmd_decode(args) -> int:
    code = _code(args.code)
    word = _parse_hex(args.word, code.n, "received word")
    try:
        cw = hard_decode(code, word)
    except DecodingFailure as exc:
        raise CliError(f"decoding failed: {exc}") from None
    print(_hex(cw))
    if args.info:
        print(_hex(cw[code.info_positions]))
    errors = int((cw != word).sum())
    print(f"corrected {errors} symbol(s)", file=sys.stderr)
    return 0


def _override_flag(key: str) -> str:
    return "--" + key.replace(".", "-").replace("_", "-")


def cmd_simulate(args) -> int:
    path = Path(args.config)
    try:
        text = path.read_text()
    except OSError as exc:
        raise CliError(f"cannot read config: {exc}") from None
    overrides = {key: str(v) for key, v in
                 ((key, getattr(args, "ov_" + key.replace(".", "_"))) for key in KEYS)
                 if v is not None}
    try:
        cfg = parse_config(text, overrides)
        cfg.resolved_profile() if cfg.scheme == "ibtc" else None
    except (ConfigError, ValueError) as exc:
        raise CliError(f"{path}: {exc}") from None

    out = Path(args.output) if args.output else path.with_suffix(".csv")
    manifest_path = out.with_suffix(".json")

    def progress(pt):
        if not args.quiet:
            print(f"Eb/N0 {pt.ebn0_db:6.2f} dB  ber {pt.ber:.3e}  fer {pt.fer:.3e}  "
                  f"{pt.bit_errors} errors / {pt.info_bits} bits  {pt.frames} frames",
                  file=sys.stderr)

    result = sim.run_sweep(cfg, progress)
    out.write_text(result.to_csv())
    manifest = {
        "csv_schema_version": sim.CSV_SCHEMA_VERSION,
        "csv_header": list(sim.CSV_HEADER),
        "version": __version__,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds"),
        "seed": cfg.seed,
        "config": cfg.to_dict(),
        "config_text": dump_config(cfg),
        "outputs": {"csv": str(out)},
        "points": [{"ebn0_db": p.ebn0_db, "elapsed_s": round(p.elapsed, 3)} for p in result.points],
    }
    if cfg.scheme == "ibtc":
        lay = cfg.resolved_profile().layout
        manifest["layout"] = {"kt": lay.kt, "ht": lay.ht, "codewords": lay.codewords,
                              "pt": lay.pt, "rate": str(lay.rate), "moves": lay.moves}
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n")
    print(f"wrote {out} and {manifest_path}", file=sys.stderr)
    return 0


def cmd_plot(args) -> int:
    labels = args.label or []
    if labels and len(labels) != len(args.csv):
        raise CliError("give one --label per CSV file")
    try:
        curves = [read_curve(p, labels[i] if labels else None) for i, p in enumerate(args.csv)]
        svg = render_svg(curves, title=args.title or "")
    except (CurveError, OSError) as exc:
        raise CliError(str(exc)) from None
    Path(args.output).write_text(svg)
    return 0


def _load_points(path) -> list[sim.PointResult]:
    import csv

    try:
        with open(path, newline="") as fh:
            rows = list(csv.DictReader(fh))
    except OSError as exc:
        raise CliError(str(exc)) from None
    points = []
    for rowno, row in enumerate(rows, 2):
        try:
            points.append(sim.PointResult(
                float(row["ebn0_db"]), frames=int(row["frames"]), info_bits=int(row["info_bits"]),
                bit_errors=int(row["bit_errors"]), frame_errors=int(row["frame_errors"]),
                complexity=round(float(row["complexity"]) * int(row["info_bits"])),
            ))
        except (KeyError, TypeError, ValueError):
            raise CliError(f"{path}: malformed row {rowno}") from None
    if not points:
        raise CliError(f"{path}: no data rows")
    return points


def _complexity(points) -> float:
    bits = sum(p.info_bits for p in points)
    return sum(p.complexity for p in points) / bits if bits else 0.0


def cmd_compare(args) -> int:
    a, b = _load_points(args.csv_a), _load_points(args.csv_b)
    try:
        gain, low, high = sim.gain_interval(a, b, args.target)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    ca, cb = _complexity(a), _complexity(b)
    print(f"gain of {args.csv_a} over {args.csv_b} at BER {args.target:g}: {gain:+.2f} dB "
          f"(95% range {low:+.2f} .. {high:+.2f} dB)")
    print(f"complexity per info bit: a {ca:.4g}, b {cb:.4g}")
    if args.manifest:
        Path(args.manifest).write_text(json.dumps({
            "a": str(args.csv_a), "b": str(args.csv_b), "target_ber": args.target,
            "gain_db": gain, "gain_low_db": low, "gain_high_db": high,
            "complexity_per_bit_a": ca, "complexity_per_bit_b": cb,
        }, indent=2) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="agibtc", description="AG block turbo code toolkit")
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("code-info", help="print code parameters")
    p.add_argument("code")
    p.set_defaults(func=cmd_code_info)

    p = sub.add_parser("encode", help="encode k hex symbols into a codeword")
    p.add_argument("code")
    p.add_argument("info", help="k hex digits, one per GF(16) symbol")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="hard-decode a 64-symbol hex word")
    p.add_argument("code")
    p.add_argument("word", help="64 hex digits")
    p.add_argument("--info", action="store_true", help="also print the information symbols")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("simulate", help="run a BER sweep from a config file")
    p.add_argument("config")
    p.add_argument("-o", "--output", help="CSV path (default: config path with .csv)")
    p.add_argument("-q", "--quiet", action="store_true")
    for key in KEYS:
        p.add_argument(_override_flag(key), dest="ov_" + key.replace(".", "_"), metavar="VALUE")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("plot", help="render BER curves to SVG")
    p.add_argument("csv", nargs="+")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--label", action="append")
    p.add_argument("--title")
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("compare", help="coding gain of curve a over curve b")
    p.add_argument("csv_a")
    p.add_argument("csv_b")
    p.add_argument("--target", type=float, default=1e-3)
    p.add_argument("--manifest", help="write a JSON report here")
    p.set_defaults(func=cmd_compare)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"agibtc {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
