"""End-to-end CLI behavior: output shapes and exit codes."""

import csv
import io
import json
import math

from weilchar.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_gamma_text_frozen_value(capsys):
    code, out, _ = run(capsys, "gamma", "--p", "5", "--a", "1")
    assert code == 0
    assert "gamma(1) = -1.000000000000+0.000000000000i" in out
    assert "chi(1) = +1" in out


def test_gamma_json_schema(capsys):
    code, out, _ = run(capsys, "gamma", "--p", "5", "--a", "2", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert set(d) == {"gamma", "chi"}
    assert set(d["gamma"]) == {"re", "im"}
    assert d["chi"] == -1  # 2 is not a square mod 5
    assert abs(complex(d["gamma"]["re"], d["gamma"]["im"])) - 1 < 1e-9


def test_gamma_csv_header(capsys):
    code, out, _ = run(capsys, "gamma", "--p", "7", "--a", "3", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["p", "a", "gamma_re", "gamma_im", "chi"]
    assert len(rows) == 2


def test_gamma_rejects_zero(capsys):
    code, _, err = run(capsys, "gamma", "--p", "5", "--a", "0")
    assert code == 2
    assert "error:" in err


def test_trace_three_routes_agree(capsys):
    code, out, _ = run(capsys, "trace", "--p", "5", "--g", "2,0,0,3",
                       "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["agree"] is True
    assert abs(d["oracle"]["re"] - (-1)) < 1e-9
    assert abs(d["oracle"]["im"]) < 1e-9
    for key in ("oracle", "closed_form", "factor_form"):
        assert set(d[key]) == {"re", "im"}


def test_trace_minus_lift_flips_sign(capsys):
    code, out, _ = run(capsys, "trace", "--p", "5", "--g", "2,0,0,3",
                       "--lift", "minus", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert abs(d["oracle"]["re"] - 1) < 1e-9


def test_trace_unipotent_frozen(capsys):
    code, out, _ = run(capsys, "trace", "--p", "5", "--g", "1,1,0,1",
                       "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert abs(d["oracle"]["re"] - (-math.sqrt(5))) < 1e-9


def test_trace_accepts_model_choice(capsys):
    code, out, _ = run(capsys, "trace", "--p", "5", "--g", "2,0,0,3",
                       "--l", "0,1", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["agree"] is True
    assert abs(d["oracle"]["re"] - (-1)) < 1e-9


def test_trace_rejects_non_symplectic(capsys):
    code, _, err = run(capsys, "trace", "--p", "5", "--g", "1,1,0,2")
    assert code == 2
    assert "not in Sp" in err


def test_trace_rejects_wrong_entry_count(capsys):
    code, _, err = run(capsys, "trace", "--p", "5", "--g", "1,0,0")
    assert code == 2
    assert "expected 4 entries" in err


def test_trace_rejects_non_integer_matrix(capsys):
    code, _, err = run(capsys, "trace", "--p", "5", "--g", "1,x,0,1")
    assert code == 2
    assert "comma-separated integers" in err


def test_rep_size_cap(capsys):
    code, _, err = run(capsys, "trace", "--p", "7", "--n", "4",
                       "--g", ",".join(["1" if i % 9 == 0 else "0" for i in range(64)]))
    assert code == 2
    assert "exceeds" in err


def test_table_exhaustive_sl2_f3(capsys):
    code, out, _ = run(capsys, "table", "--p", "3")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "g,dim_ker,det_sigma_class,trace_re,trace_im,formula_used"
    assert len(lines) == 1 + 24
    ident = [ln for ln in lines[1:] if ln.startswith("1 0 0 1,")]
    assert len(ident) == 1
    cells = ident[0].split(",")
    assert cells[1] == "2"          # g - 1 vanishes on the whole plane
    assert cells[3] == "3"          # trace = p^n on the identity
    assert cells[5] == "closed-singular"


def test_table_json_schema(capsys):
    code, out, _ = run(capsys, "table", "--p", "3", "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 24
    for row in rows:
        assert set(row) == {"g", "dim_ker", "det_sigma_class", "trace", "formula_used"}
        assert set(row["det_sigma_class"]) == {"rep", "is_square"}
        assert set(row["trace"]) == {"re", "im"}
        assert row["formula_used"] in ("closed", "closed-singular")
        assert (row["dim_ker"] > 0) == (row["formula_used"] == "closed-singular")
    ident = [r for r in rows if r["g"] == [[1, 0], [0, 1]]]
    assert ident and ident[0]["det_sigma_class"]["is_square"] is True


def test_table_sampled_when_group_too_big(capsys):
    code, out, _ = run(capsys, "table", "--p", "11", "--max-enum", "100",
                       "--samples", "7", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert len(rows) == 1 + 7


def test_table_sampling_deterministic(capsys):
    _, out1, _ = run(capsys, "table", "--p", "13", "--max-enum", "10",
                     "--samples", "5", "--seed", "9")
    _, out2, _ = run(capsys, "table", "--p", "13", "--max-enum", "10",
                     "--samples", "5", "--seed", "9")
    assert out1 == out2


def test_verify_passes_and_reports(capsys):
    code, out, _ = run(capsys, "verify", "--p", "3", "--n", "1", "--samples", "4")
    assert code == 0
    assert "verdict: pass" in out
    assert "first witness" not in out


def test_verify_json_schema(capsys):
    code, out, _ = run(capsys, "verify", "--p", "3", "--n", "1",
                       "--samples", "3", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["ok"] is True
    assert all(r["ok"] for r in d["results"])
    assert {r["suite"] for r in d["results"]} >= {"gamma", "trace", "loops"}


def test_verify_detects_corrupted_cocycle(capsys):
    code, out, _ = run(capsys, "verify", "--p", "5", "--n", "1",
                       "--samples", "6", "--corrupt-cocycle")
    assert code == 1
    assert "verdict: FAIL" in out
    assert "first witness:" in out


def test_verify_rejects_bad_prime_list(capsys):
    code, _, err = run(capsys, "verify", "--p", "3,x")
    assert code == 2
    assert "error:" in err


def test_verify_rejects_oversized_cell(capsys):
    code, _, err = run(capsys, "verify", "--p", "11", "--n", "3")
    assert code == 2
    assert "exceeds" in err


def test_verify_csv_header(capsys):
    code, out, _ = run(capsys, "verify", "--p", "3", "--n", "1",
                       "--samples", "3", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["suite", "p", "n", "checked", "failed", "max_err",
                       "seconds", "ok"]
