import csv
import io
import json

import pytest

from wulff_tension import __version__
from wulff_tension.cli import main


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def table(text):
    lines = [l for l in text.splitlines() if not l.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


def test_tension_row(capsys):
    status, out, _ = run(capsys, "tension", "--beta", "0.6", "--x", "1,0")
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == f"# wulff-tension v{__version__}"
    assert "# beta=0.6" in lines and "# x=1,0" in lines
    (row,) = table(out)
    assert float(row["tau"]) == pytest.approx(0.578335, abs=1e-6)


def test_numbers_have_17_digits(capsys):
    _, out, _ = run(capsys, "tension", "--beta", "0.6")
    (row,) = table(out)
    assert row["beta_high"] == "0.59999999999999998"


def test_wulff_near_critical_is_degenerate(capsys):
    status, out, _ = run(capsys, "wulff", "--beta", "0.4406868", "--points", "64")
    assert status == 0
    rows = table(out)
    assert len(rows) == 64
    assert all(abs(float(r["y1"])) < 1e-6 and abs(float(r["y2"])) < 1e-6 for r in rows)


def test_green_three_methods(capsys):
    status, out, _ = run(
        capsys, "green", "--x", "1,0", "--m", "0.5", "--methods", "series,quadrature,bessel"
    )
    assert status == 0
    vals = [float(r["value"]) for r in table(out)]
    assert len(vals) == 3
    assert max(vals) - min(vals) <= 1e-8


def test_json_mirrors_csv(capsys):
    _, out_csv, _ = run(capsys, "green", "--x", "2,1", "--m", "0.7")
    _, out_json, _ = run(capsys, "green", "--x", "2,1", "--m", "0.7", "--format", "json")
    doc = json.loads(out_json)
    assert doc["header"] == f"wulff-tension v{__version__}"
    assert doc["config"]["format"] == "json"
    rows = table(out_csv)
    assert doc["columns"] == list(rows[0].keys())
    assert [r[4] for r in doc["rows"]] == [float(r["value"]) for r in rows]


def test_isotropy_sweep(capsys):
    status, out, _ = run(capsys, "scaling", "--eps", "1e-2,1e-3,1e-4", "--directions", "32")
    assert status == 0
    rows = table(out)
    assert len(rows) == 96
    gaps = [float(rows[i * 32]["gap"]) for i in range(3)]
    assert gaps[0] > gaps[1] > gaps[2]


def test_beta_grid_monotone_m(capsys):
    _, out, _ = run(capsys, "tension", "--beta", "0.45:2.0:20")
    ms = [float(r["m"]) for r in table(out)]
    assert len(ms) == 20
    assert all(a > b for a, b in zip(ms, ms[1:]))


def test_oz_ratio_sweep(capsys):
    _, out, _ = run(capsys, "asymptotics", "--m", "0.5", "--x", "10,0;20,0;40,0")
    errs = [float(r["abs_ratio_error"]) for r in table(out)]
    assert errs[0] > errs[1] > errs[2]


def test_moderate_sweep(capsys):
    status, out, _ = run(capsys, "scaling", "--lambda", "1e-2,1e-4", "--n", "10,20")
    assert status == 0
    assert len(table(out)) == 4


def test_mc_deterministic(capsys):
    args = ("mc", "--m", "0.6", "--x", "1,0;2,2", "--samples", "5000", "--seed", "3")
    a = run(capsys, *args)
    b = run(capsys, *args)
    assert a == b and a[0] == 0


def test_output_file(capsys, tmp_path):
    path = tmp_path / "t.csv"
    status, out, _ = run(capsys, "tension", "--beta", "0.7", "--out", str(path))
    assert status == 0 and out == ""
    text = path.read_text()
    assert "out=" not in text
    assert text.startswith("# wulff-tension")


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["tension", "--beta", "0.6", "--phi", "0.3"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["tension", "--beta", "0.6", "--m", "0.5"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["green", "--m", "0.5", "--x", "1.5,0"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 1


def test_domain_error_status(capsys):
    status, out, err = run(capsys, "tension", "--beta", "0.3")
    assert status == 2 and out == "" and "domain error" in err


def test_validation_failure_status(capsys):
    status, out, err = run(
        capsys, "mc", "--m", "0.5", "--x", "1,0", "--samples", "2000", "--tol", "1e-9"
    )
    assert status == 3 and "z-score" in err
    assert out  # the table is still written


def test_oversize_grid(capsys):
    xs = ";".join(f"{i},0" for i in range(1, 1002))
    status, out, err = run(capsys, "tension", "--beta", "0.5:1.0:1000", "--x", xs)
    assert status == 1 and out == "" and "limit" in err
