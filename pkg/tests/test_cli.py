import json
import math

import numpy as np
import pytest

from cascadelab import cli
from cascadelab.cascade import DyadicStepFunction, cascade_from_haar
from cascadelab.filters import haar, save_filter, theta_family, WaveletFilter


def run(argv, capsys):
    code = cli.main(argv)
    return code, capsys.readouterr()


@pytest.mark.parametrize(
    "text, value",
    [("9pi/20", 9 * math.pi / 20), ("-pi/2", -math.pi / 2), ("pi", math.pi), ("0.25", 0.25), ("2*pi/5", 2 * math.pi / 5)],
)
def test_parse_theta(text, value):
    assert cli.parse_theta(text) == pytest.approx(value)


def test_parse_theta_rejects_garbage():
    with pytest.raises(Exception):
        cli.parse_theta("pie")


def test_movie_thetas():
    th = cli.movie_thetas(21)
    assert len(th) == 21
    assert th[0] == pytest.approx(-math.pi / 2)
    assert th[-1] == pytest.approx(math.pi / 2)


def test_validate(tmp_path, capsys):
    code, out = run(["validate", "--theta", "0.785398"], capsys)
    assert code == 0
    assert out.out.startswith("condition,residual,ok")
    bad = tmp_path / "bad.json"
    save_filter(WaveletFilter([1.0, 1.0]), bad)
    code, out = run(["validate", "--filter", str(bad), "--format", "json"], capsys)
    assert code == 1
    assert json.loads(out.out)["ok"] is False


def test_malformed_and_missing_filter_files(tmp_path, capsys):
    empty = tmp_path / "empty.json"
    empty.write_text("")
    code, out = run(["validate", "--filter", str(empty)], capsys)
    assert code == 1
    assert "malformed" in out.err
    code, out = run(["validate", "--filter", str(tmp_path / "missing.json")], capsys)
    assert code == 3


def test_spectrum(tmp_path, capsys):
    code, out = run(["spectrum", "--theta", "pi/2"], capsys)
    assert code == 0
    data = json.loads(out.out)
    assert data["condition_e"] is False
    assert data["closed_form_max_error"] < 1e-9
    code, out = run(["spectrum", "--theta", "0"], capsys)
    assert json.loads(out.out)["condition_e"] is True

    path = tmp_path / "haar.json"
    save_filter(haar(), path)
    code, out = run(["spectrum", "--filter", str(path)], capsys)
    ev = json.loads(out.out)["eigenvalues"]
    assert [(round(e["re"], 10), e["mult"]) for e in ev] == [(1.0, 1), (0.5, 2)]


def test_spectrum_rejects_invalid_filter(tmp_path, capsys):
    path = tmp_path / "f.json"
    save_filter(WaveletFilter([1.0, 1.0]), path)
    code, _ = run(["spectrum", "--filter", str(path)], capsys)
    assert code == 1


def test_cascade_stage_zero_is_box(capsys):
    code, out = run(["cascade", "--theta", "0.3", "--stages", "0"], capsys)
    assert code == 0
    psi = DyadicStepFunction.from_csv(out.out)
    assert psi.values.tolist() == [1, 0, 0]


def test_cascade_norms_and_right_end(tmp_path, capsys):
    out = tmp_path / "c.csv"
    theta = 0.6
    code, _ = run(["cascade", "--theta", str(theta), "--stages", "8", "--out", str(out)], capsys)
    assert code == 0
    norms = json.loads((tmp_path / "c.csv.norms.json").read_text())["norms"]
    assert len(norms) == 9
    assert all(abs(r["norm"] - 1) < 1e-10 for r in norms)
    psi = DyadicStepFunction.from_csv(out.read_text())
    c3 = math.sqrt(2) * theta_family(theta).coefficients[3].real
    last = psi.values[np.nonzero(psi.values)[0][-1]]
    assert last.real == pytest.approx(c3**8, rel=1e-10)
    expected = cascade_from_haar(theta_family(theta), 8)[-1]
    np.testing.assert_array_equal(psi.values, expected.values)
    # deterministic output
    run(["cascade", "--theta", str(theta), "--stages", "8", "--out", str(tmp_path / "d.csv")], capsys)
    assert (tmp_path / "d.csv").read_text() == out.read_text()


def test_cascade_json(capsys):
    code, out = run(["cascade", "--theta", "0.1", "--stages", "2", "--format", "json"], capsys)
    data = json.loads(out.out)
    assert data["level"] == 2 and len(data["values"]) == 12


def test_cascade_negative_stages(capsys):
    code, _ = run(["cascade", "--theta", "0.1", "--stages", "-1"], capsys)
    assert code == 1


def test_jumps_stage_zero(capsys):
    code, out = run(["jumps", "--theta", "0.2", "--stages", "0", "--resolution", "2"], capsys)
    assert code == 0
    lines = out.out.strip().splitlines()
    assert lines[0] == "n,x,psi_plus,psi_minus,jump"
    rows = [l.split(",") for l in lines[1:]]
    assert [float(r[2]) for r in rows] == [1, 1, 1, 1] + [0] * 9
    assert [float(r[3]) for r in rows] == [0, 1, 1, 1, 1] + [0] * 8


def test_jumps_bad_resolution(capsys):
    code, _ = run(["jumps", "--theta", "0.2", "--resolution", "40"], capsys)
    assert code == 2


def test_movie(tmp_path, capsys):
    code, _ = run(["movie", "--out", str(tmp_path / "m"), "--stages", "3"], capsys)
    assert code == 0
    assert len(list((tmp_path / "m").glob("frame*.csv"))) == 21

    code, _ = run(["movie", "--out", str(tmp_path / "one"), "--theta", "0.4", "--stages", "5"], capsys)
    (frame,) = (tmp_path / "one").glob("*.csv")
    code, out = run(["cascade", "--theta", "0.4", "--stages", "5"], capsys)
    assert frame.read_text() == out.out


def test_peaks(capsys):
    code, out = run(["peaks"], capsys)
    assert code == 0
    lines = out.out.strip().splitlines()
    assert len(lines) == 20
    code, out = run(["peaks", "--theta=-pi/4,pi/4"], capsys)
    rows = out.out.strip().splitlines()[1:]
    assert rows[0].endswith("-0.7071,0.0000,1.7071")
    assert rows[1].endswith("0.2929,0.0000,0.7071")


def test_unwritable_output(tmp_path, capsys):
    target = tmp_path / "no" / "such" / "dir" / "x.csv"
    code, out = run(["peaks", "--out", str(target)], capsys)
    assert code == 3
    assert "cannot write" in out.err
