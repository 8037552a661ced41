import csv
import json

import pytest

from pwbounds.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bound_anchor(capsys):
    code, out, _ = run(capsys, "bound", "--p", "2", "--format", "json")
    assert code == 0
    v = json.loads(out)["value"]
    lo, hi = v["lo"], v["hi"]
    assert abs(lo - 1) < 1e-8 and abs(hi - 1) < 1e-8


def test_bound_half_p(capsys):
    code, out, _ = run(capsys, "bound", "--p", "3", "--method", "half-p")
    assert code == 0 and "1.5" in out


def test_bound_range_exit(capsys):
    code, _, err = run(capsys, "bound", "--p", "5.5")
    assert code == 2 and "p outside [2,5]" in err


def test_ep_sinc(tmp_path, capsys):
    f = tmp_path / "lam.json"
    f.write_text("[1.0]")
    code, out, _ = run(capsys, "ep", str(f), "--p", "2", "--format", "json")
    assert code == 0
    e = json.loads(out)["ep"]
    lo, hi = e["lo"], e["hi"]
    assert lo <= 0.5 <= hi


def test_ep_matches_half_the_bound(tmp_path, capsys):
    f = tmp_path / "lam.txt"
    f.write_text("1.1 2.1 3.1 4.1")
    _, out, _ = run(capsys, "ep", str(f), "--p", "5", "--format", "json")
    e = json.loads(out)["ep"]
    lo, hi = e["lo"], e["hi"]
    _, out, _ = run(capsys, "bound", "--p", "5", "--format", "json")
    v = json.loads(out)["value"]
    blo, bhi = v["lo"], v["hi"]
    assert lo <= bhi / 2 + 1e-12 and blo / 2 <= hi + 1e-12


def test_ep_infeasible_exit(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("0.1 1.1 2.1")
    code, _, _ = run(capsys, "ep", str(f), "--p", "3", "--delta1", "0.5", "--delta2", "0.6")
    assert code == 4
    code, _, _ = run(capsys, "ep", str(f), "--p", "3", "--delta1", "0.5", "--delta2", "0.6", "--no-validate")
    assert code == 0


@pytest.mark.parametrize("content", ["[0.5, \"x\"]", "{\"terms\": 3}", "abc"])
def test_ep_parse_exit(tmp_path, capsys, content):
    f = tmp_path / "junk.txt"
    f.write_text(content)
    assert run(capsys, "ep", str(f), "--p", "3")[0] == 3


def test_ep_missing_file(tmp_path, capsys):
    assert run(capsys, "ep", str(tmp_path / "none.txt"), "--p", "3")[0] == 3


def test_figure1_rows_and_reproducibility(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(capsys, "figure1", "--pmin", "2", "--pmax", "5", "--step", "0.05", "--out", str(a))[0] == 0
    assert run(capsys, "figure1", "--pmin", "2", "--pmax", "5", "--step", "0.05", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    rows = list(csv.DictReader(a.open()))
    assert len(rows) == 61
    for r in rows[1:]:
        assert float(r["new_over_p_hi"]) < 0.5
    assert float(rows[0]["new_over_p_lo"]) <= 0.5 <= float(rows[0]["new_over_p_hi"])


def test_optimize_low(capsys):
    code, out, _ = run(capsys, "optimize", "--p", "3", "--n", "5", "--grid", "0.01", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["within_tolerance"] is True
    assert rep["in_family"] is True


def test_verify_appendix(tmp_path, capsys):
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    assert run(capsys, "verify", "--suite", "appendix", "--seed", "7", "--out", str(out_a))[0] == 0
    assert run(capsys, "verify", "--suite", "appendix", "--seed", "7", "--out", str(out_b))[0] == 0
    names = sorted(p.name for p in out_a.iterdir())
    assert "summary.json" in names
    for name in names:
        assert (out_a / name).read_bytes() == (out_b / name).read_bytes()


def test_verify_failure_reports_path(tmp_path, capsys):
    code, out, err = run(capsys, "verify", "--suite", "lemmas", "--lemma", "4.1", "--samples", "300",
                         "--out", str(tmp_path))
    assert code == 1
    assert "4.1" in out + err


@pytest.mark.parametrize("cmd", ["bound", "ep", "figure1", "optimize", "verify"])
def test_help_names_the_result(cmd, capsys):
    with pytest.raises(SystemExit) as exc:
        main([cmd, "--help"])
    assert exc.value.code == 0
    text = " ".join(capsys.readouterr().out.split())
    assert "C_p <= 2 sup E_p" in text or "the supremum of E_p is attained" in text
