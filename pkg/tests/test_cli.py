import json

import numpy as np
import pytest

from agibtc.cli import main
from agibtc.hermitian import build_code, encode

CFG = """scheme = uncoded
modulation = bpsk
ebn0.start = 4
ebn0.stop = 4
stop.max_frames = 10
stop.min_bit_errors = none
uncoded.frame_bits = 2000
"""


@pytest.mark.parametrize("code,k,d,t", [("ag64_49", 49, 10, 1), ("ag64_44", 44, 15, 4)])
def test_code_info(capsys, code, k, d, t):
    assert main(["code-info", code]) == 0
    out = capsys.readouterr().out
    assert f"k            {k}\n" in out
    assert f"d*           {d}\n" in out
    assert f"t            {t}\n" in out


def test_code_info_bogus(capsys):
    assert main(["code-info", "bogus"]) != 0
    assert "bogus" in capsys.readouterr().err


def test_encode_decode(capsys):
    code = build_code(49)
    info = np.arange(49) % 16
    assert main(["encode", "ag64_49", "".join(f"{v:x}" for v in info)]) == 0
    cw_hex = capsys.readouterr().out.strip()
    assert cw_hex == "".join(f"{v:x}" for v in encode(code, info))
    bad = cw_hex[:20] + format(int(cw_hex[20], 16) ^ 3, "x") + cw_hex[21:]
    assert main(["decode", "ag64_49", bad, "--info"]) == 0
    out = capsys.readouterr().out.split()
    assert out[0] == cw_hex
    assert out[1] == "".join(f"{v:x}" for v in info)
    assert main(["encode", "ag64_49", "12"]) != 0
    assert main(["decode", "ag64_49", "g" * 64]) != 0
    assert main(["decode", "ag64_49", "1" * 8 + "0" * 56]) != 0


def test_simulate(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(CFG)
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["simulate", str(cfg), "-q", "--seed", "42", "-o", str(out1)]) == 0
    assert main(["simulate", str(cfg), "-q", "--seed", "42", "-o", str(out2)]) == 0
    text = out1.read_text()
    assert text == out2.read_text()
    lines = text.splitlines()
    assert lines[0] == ("ebn0_db,ber,fer,frames,info_bits,bit_errors,frame_errors,"
                        "mean_iters,chase_failures,complexity")
    assert len(lines) == 2
    manifest = json.loads((tmp_path / "a.json").read_text())
    assert manifest["seed"] == 42 and manifest["csv_schema_version"] == 1
    assert manifest["config"]["uncoded_bits"] == 2000


def test_simulate_errors(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text(CFG + "chase.q = 3\n")
    assert main(["simulate", str(cfg)]) != 0
    assert "line 8: unknown key 'chase.q'" in capsys.readouterr().err
    cfg.write_text(CFG)
    assert main(["simulate", str(cfg), "--modulation", "8psk"]) != 0
    assert main(["simulate", str(tmp_path / "missing.cfg")]) != 0


def _write_curve(path, xs, bers):
    rows = ["ebn0_db,ber,fer,frames,info_bits,bit_errors,frame_errors,mean_iters,chase_failures,complexity"]
    for x, b in zip(xs, bers):
        rows.append(f"{x},{b},1,10,1000000,{int(b * 1e6)},10,8,0,2.5")
    path.write_text("\n".join(rows) + "\n")


def test_compare(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    _write_curve(a, [4, 6], [1e-2, 1e-4])
    _write_curve(b, [5, 7], [1e-2, 1e-4])
    assert main(["compare", str(a), str(a)]) == 0
    assert "+0.00 dB" in capsys.readouterr().out
    assert main(["compare", str(a), str(b), "--manifest", str(tmp_path / "c.json")]) == 0
    assert "+1.00 dB" in capsys.readouterr().out
    rep = json.loads((tmp_path / "c.json").read_text())
    assert rep["gain_db"] == pytest.approx(1.0)
    assert rep["complexity_per_bit_a"] == pytest.approx(2.5)
    assert main(["compare", str(a), str(b), "--target", "1e-7"]) != 0


def test_plot(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    _write_curve(a, [4, 6], [1e-2, 1e-4])
    _write_curve(b, [5, 7], [1e-2, 1e-4])
    svg = tmp_path / "out.svg"
    assert main(["plot", str(a), str(b), "-o", str(svg), "--label", "IBTC", "--label", "BTC"]) == 0
    text = svg.read_text()
    assert ">IBTC<" in text and ">BTC<" in text and "10⁻⁶" in text
    a.write_text(a.read_text().splitlines()[0] + "\n")
    assert main(["plot", str(a), "-o", str(svg)]) != 0
    a.write_text(a.read_text() + "5,oops,1,1,1,1,1,1,1,1\n")
    assert main(["plot", str(a), "-o", str(svg)]) != 0
    assert "row 2" in capsys.readouterr().err
