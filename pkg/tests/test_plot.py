import pytest

from agibtc.plot import Curve, CurveError, read_curve, render_svg

CSV = ("ebn0_db,ber,fer,frames,info_bits,bit_errors,frame_errors,mean_iters,chase_failures,complexity\n"
       "0,0.1,1,10,1000,100,10,8,0,0\n"
       "5,0.001,0.5,100,100000,100,50,8,0,0\n"
       "10,0,0,100,100000,0,0,8,0,0\n")


def test_render(tmp_path):
    p = tmp_path / "a.csv"
    p.write_text(CSV)
    c = read_curve(p)
    assert c.label == "a" and c.ber == [0.1, 0.001, 0.0]
    svg = render_svg([c, Curve("other & more", [0, 5], [0.2, 0.01])])
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    for dec in ["10⁰", "10⁻¹", "10⁻³", "10⁻⁶"]:
        assert f">{dec}<" in svg
    assert svg.count('class="curve"') == 2
    assert svg.count('class="legend"') == 2
    assert "other &amp; more" in svg
    assert 'class="whisker"' in svg


@pytest.mark.parametrize("body", [
    "ebn0_db,ber\n",
    "ebn0_db,ber\n1,abc\n",
    "ebn0_db,ber\n1,1.5\n",
    "x,y\n1,2\n",
])
def test_bad_input(tmp_path, body):
    p = tmp_path / "bad.csv"
    p.write_text(body)
    with pytest.raises(CurveError):
        read_curve(p)


def test_nothing_to_plot():
    with pytest.raises(CurveError):
        render_svg([])
