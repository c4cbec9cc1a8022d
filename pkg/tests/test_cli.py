import json
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from reference_values import HONEYCOMB_TABLE
from walkarea import cli, combinatorics


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count_json_matches_table(capsys):
    code, out, _ = run(capsys, "count", "--lattice", "honeycomb", "--steps", "14", "--method", "formula", "--format", "json")
    assert code == 0
    rec = cli.OutputRecord.from_json(out)
    assert rec.total == 272835
    combined = [rec.counts[0]] + [rec.counts[a] + rec.counts[-a] for a in range(1, 5)]
    assert combined == HONEYCOMB_TABLE[14]
    raw = json.loads(out)
    assert set(raw) >= {"lattice", "steps", "method", "counts", "total"}
    assert all(isinstance(v, str) for v in raw["counts"].values()) and isinstance(raw["total"], str)


def test_count_combined_rows(capsys):
    code, out, _ = run(capsys, "count", "--lattice", "square", "--steps", "6", "--method", "oracle", "--paper-style")
    assert code == 0
    rows = [line.split()[-1] for line in out.splitlines()[1:-1]]
    assert rows == ["232", "144", "24"]


def test_count_csv(capsys):
    code, out, _ = run(capsys, "count", "--lattice", "square", "--steps", "4", "--format", "csv")
    assert code == 0
    assert out == "area,count\n-1,4\n0,28\n1,4\n"


@pytest.mark.parametrize("method", ["formula", "oracle", "spectral"])
def test_methods_agree(capsys, method):
    _, out, _ = run(capsys, "count", "--lattice", "honeycomb", "--steps", "10", "--method", method, "--format", "json")
    assert cli.OutputRecord.from_json(out).counts == {0: 3543, 1: 540, -1: 540, 2: 15, -2: 15}


def test_usage_errors(capsys):
    assert run(capsys, "count", "--lattice", "square", "--steps", "3")[0] == 2
    assert run(capsys, "count", "--lattice", "square", "--steps", "14", "--method", "oracle")[0] == 2
    assert run(capsys, "trace", "--lattice", "square", "--q", "11", "--p", "1", "--power", "12")[0] == 2
    assert run(capsys, "trace", "--lattice", "square", "--q", "10", "--p", "2", "--power", "2")[0] == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["count", "--lattice", "triangle", "--steps", "4"])
    assert exc.value.code == 2


def test_budget_override(capsys):
    code, out, _ = run(capsys, "count", "--lattice", "square", "--steps", "14", "--method", "oracle",
                       "--budget-override", "14", "--format", "json")
    assert code == 0 and cli.OutputRecord.from_json(out).total == 3432 ** 2


def test_trace_expansions(capsys):
    code, out, _ = run(capsys, "trace", "--lattice", "honeycomb", "--q", "11", "--p", "1", "--power", "5")
    assert code == 0 and "3(1181+360cos(2π/11)+10cos(4π/11))" in out
    code, out, _ = run(capsys, "trace", "--lattice", "square", "--q", "11", "--p", "1", "--power", "5")
    assert code == 0
    assert "4(5486+6580cos(2π/11)+2770cos(4π/11)+780cos(6π/11)+210cos(8π/11)+40cos(10π/11)+10cos(12π/11))" in out


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--max-steps", "10")
    assert code == 0
    for lattice in ("square", "honeycomb"):
        assert f"[PASS] {lattice} steps=10: oracle = formula" in out
        assert f"[PASS] {lattice} steps=10: formula = spectral" in out


def test_verify_honeycomb_only(capsys):
    code, out, _ = run(capsys, "verify", "--max-steps", "14", "--lattice", "honeycomb")
    assert code == 0 and "square steps" not in out


def test_verify_detects_tampering(capsys, monkeypatch):
    real = combinatorics.cn_coeff

    def perturbed(n, parts):
        value = real(n, parts)
        return value + 1 if len(parts) == 2 else value

    monkeypatch.setattr(combinatorics, "cn_coeff", perturbed)
    code, _, err = run(capsys, "verify", "--max-steps", "10", "--lattice", "honeycomb")
    assert code == 1
    assert "first failing check: honeycomb steps=" in err


@given(st.dictionaries(st.integers(-50, 50), st.integers(0, 10**30), max_size=8), st.sampled_from(["oracle", "formula"]))
def test_json_round_trip(counts, method):
    counts = {a: c for a, c in counts.items() if c}
    rec = cli.OutputRecord("square", 8, method, counts, sum(counts.values()), 12)
    assert cli.OutputRecord.from_json(rec.to_json()) == rec


def test_record_rejects_bad_total():
    with pytest.raises(ValueError):
        cli.OutputRecord("square", 2, "formula", {0: 4}, 5)


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "walkarea", "count", "--lattice", "square", "--steps", "2"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "total  4" in res.stdout
