import csv
import io
import json

import pytest

from sympeaks.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_closed_form_hsp_5(capsys):
    code, rep = run_json(capsys, "closed-form", "--which", "hsp", "--n", "5")
    assert code == 0
    assert rep["rows"] == [{"n": 5, "value": 4, "integral": True}]
    assert rep["checks"][0]["status"] == "pass"
    assert set(rep) == {"command", "params", "rows", "checks", "version"}


def test_closed_form_range(capsys):
    code, rep = run_json(capsys, "closed-form", "--which", "dsv", "--max-n", "10")
    assert [r["value"] for r in rep["rows"]] == [0, 0, 0, 0, 0, 1, 2, 7, 17, 43, 101]


def test_table_n8_valleys(capsys):
    code, rep = run_json(capsys, "table", "--max-n", "8")
    total = [r for r in rep["rows"] if r["n"] == 8 and r["k"] == "total"][0]
    assert (total["sv"], total["dsv"], total["count"]) == (15, 17, 128)


def test_enumerate_csv(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "5", "--k", "3", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 6
    assert {"parts": "1 3 1", "n": "5", "k": "3", "sp": "1", "sv": "0", "hsp": "2", "dsv": "0"} in rows


def test_gf_tables(capsys):
    _, rep = run_json(capsys, "gf", "--which", "hsp-total", "--max-n", "8")
    assert rep["rows"][8] == {"n": 8, "value": 84}
    _, rep = run_json(capsys, "gf", "--which", "sp-marginal", "--max-n", "5")
    assert rep["rows"][5]["value"] == 3
    _, rep = run_json(capsys, "gf", "--which", "sv-marginal", "--max-n", "8")
    assert rep["rows"][8]["value"] == 15
    _, rep = run_json(capsys, "gf", "--which", "full-hsp", "--max-n", "5")
    assert {"n": 5, "k": 3, "sp": 1, "hsp": 2, "count": 1} in rep["rows"]
    _, rep = run_json(capsys, "gf", "--which", "dsv-nk", "--max-n", "5")
    assert {"n": 5, "k": 3, "value": 1} in rep["rows"]


def test_formula(capsys):
    _, rep = run_json(capsys, "formula", "--which", "hsp", "--n", "5", "--k", "4")
    assert rep["rows"] == [{"n": 5, "k": 4, "value": 2}]
    _, rep = run_json(capsys, "formula", "--which", "sp-count", "--max-n", "6")
    assert all(r["k"] >= 4 for r in rep["rows"])


def test_formula_usage_errors(capsys):
    assert run(capsys, "formula", "--which", "sp-count", "--n", "5", "--k", "3")[0] == 2
    assert run(capsys, "formula", "--which", "hsp", "--n", "5")[0] == 2


def test_geom_expect_rational_encoding(capsys):
    _, rep = run_json(capsys, "geom", "expect", "--stat", "dsv", "--p", "0.5", "--n", "9")
    assert rep["rows"][0]["value"] == {"num": "4", "den": "9", "decimal": "0.444444444444"}


def test_geom_variance(capsys):
    _, rep = run_json(capsys, "geom", "variance", "--stat", "sp", "--p", "1/2", "--n", "100")
    assert rep["rows"][0]["value"]["num"].startswith("-")
    assert not rep["rows"][0]["series_exact"]["num"].startswith("-")
    assert run(capsys, "geom", "variance", "--stat", "dsv", "--p", "1/2", "--n", "9")[0] == 2


def test_geom_simulate_is_deterministic(capsys):
    args = ("geom", "simulate", "--stat", "hsp", "--p", "1/2", "--n", "20", "--trials", "2000", "--seed", "9")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second
    assert json.loads(first)["rows"][0]["trials"] == 2000


def test_geom_oracle(capsys):
    _, rep = run_json(capsys, "geom", "oracle", "--stat", "sp", "--p", "1/2", "--n", "6", "--cap", "20")
    row = rep["rows"][0]
    assert set(row) >= {"mean", "second_moment", "variance", "tail_bound"}


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["table"],
    ["enumerate", "--n", "-3"],
    ["geom", "expect", "--stat", "sp", "--p", "2", "--n", "5"],
    ["geom", "expect", "--stat", "sp", "--p", "abc", "--n", "5"],
    ["closed-form", "--which", "hsp", "--n", "3", "--max-n", "4"],
])
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        code = main(argv)
        raise SystemExit(code)
    assert exc.value.code == 2


def test_verify_exit_codes(capsys, monkeypatch):
    code, rep = run_json(capsys, "verify", "--max-n", "8")
    assert code == 0
    statuses = {c["status"] for c in rep["checks"]}
    assert "fail" not in statuses and "finding" in statuses
    names = [c["name"] for c in rep["checks"]]
    assert names == sorted(names)

    from sympeaks import cli
    from sympeaks.report import Report, check
    monkeypatch.setattr(cli, "run_verify", lambda *a: Report("verify", checks=[check("x", False)]))
    assert main(["verify"]) == 1


def test_text_format(capsys):
    code, out, _ = run(capsys, "closed-form", "--which", "hsp", "--n", "5", "--format", "text")
    assert out.startswith("pass")
