from __future__ import annotations

import json

import pytest

from shuffle_lab import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_stats_json(capsys):
    code, out, _ = run(capsys, "stats", "--path", "N(1)EN(2)E*E")
    assert code == 0
    obj = json.loads(out)
    assert obj["stats"]["area"] == 0 and obj["stats"]["dinv"] == 1


def test_stats_bad_path(capsys):
    code, _, err = run(capsys, "stats", "--path", "NQ")
    assert code == 3 and "malformed path" in err


def test_symfunc_expression(capsys):
    code, out, _ = run(capsys, "symfunc", "--expr", "e[2,3]", "--basis", "schur")
    assert code == 0
    assert out.strip() == "s[2,1] + (1*t + 1*q)*s[1,1,1]"


def test_symfunc_nabla_matches_e_square(capsys):
    a = cli.evaluate("nabla e(2)")
    b = cli.evaluate("e[2,2]")
    assert a == b
    assert cli.evaluate("perp[s(1)] s(2,1) - s(2) - s(1,1)") == cli.evaluate("0")


def test_symfunc_json(capsys):
    code, out, _ = run(capsys, "symfunc", "--expr", "(q + t) * s(2)", "--format", "json")
    assert code == 0 and json.loads(out)["basis"] == "schur"


@pytest.mark.parametrize("expr", ["foo", "e[1]", "s(1", "zeta[s(1)] s(1)"])
def test_symfunc_bad_expression(capsys, expr):
    code, _, err = run(capsys, "symfunc", "--expr", expr)
    assert code == 5, err


def test_symfunc_degree_overflow(capsys):
    code, _, err = run(capsys, "symfunc", "--expr", "nabla e(12)")
    assert code == 4 and "degree" in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["enumerate"])
    assert exc.value.code == 2


def test_enumerate_text_and_json(capsys):
    code, out, _ = run(capsys, "enumerate", "--m", "2", "--n", "2", "--dyck")
    assert code == 0 and out.strip().endswith("# 2 paths")
    code, out, _ = run(capsys, "enumerate", "--m", "1", "--n", "1", "--k", "1",
                       "--labels", "2", "--format", "json")
    obj = json.loads(out)
    assert obj["count"] == len(obj["paths"]) > 0


def test_verify_suite_passes(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "main", "--max-m", "1", "--max-n", "1",
                       "--max-k", "1", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["theorem_failures"] == 0 and len(obj["reports"]) == 4


def test_verify_reports_theorem_failure(capsys, monkeypatch):
    from shuffle_lab import verify as V

    real = V.check_rational

    def broken(m, n):
        r = real(m, n)
        r.equal = False
        return r

    monkeypatch.setitem(V.CHECKS, "rational", lambda p: broken(p["m"], p["n"]))
    code, out, _ = run(capsys, "verify", "--suite", "rational", "--max-m", "1", "--max-n", "1")
    assert code == 1 and "DIFFERENT" in out


def test_cache_rebuild_uses_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("SHUFFLE_LAB_CACHE", str(tmp_path))
    code, out, _ = run(capsys, "cache", "--rebuild", "--max-degree", "2")
    assert code == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == [f"mac_deg_{n}.json" for n in range(3)]
    code, out, _ = run(capsys, "cache")
    assert code == 0 and "mac_deg_2.json" in out


def test_cache_without_directory(capsys, monkeypatch):
    monkeypatch.delenv("SHUFFLE_LAB_CACHE", raising=False)
    code, _, err = run(capsys, "cache")
    assert code == 6 and "cache directory" in err


def test_verify_parallel_jobs(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--suite", "rational", "--max-m", "2", "--max-n", "1",
                       "--jobs", "2", "--cache-dir", str(tmp_path), "--format", "json")
    assert code == 0
    assert [r["params"] for r in json.loads(out)["reports"]] == [{"m": 1, "n": 1}, {"m": 2, "n": 1}]
