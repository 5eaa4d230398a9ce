from __future__ import annotations

import json

import pytest

from shuffle_lab import symfunc as sf
from shuffle_lab import verify as V


def test_main_theorem_small():
    r = V.check_main(1, 1, 1)
    assert r.equal and r.status == "theorem" and r.counterexample is None


def test_rational_theorem_small():
    assert V.check_rational(2, 3).equal


def test_rectangular_status_depends_on_gcd():
    assert V.check_rectangular(2, 1, 1).status == "theorem"
    assert V.check_rectangular(2, 2, 0).status == "conjecture"


def test_first_difference_reports_smallest_degree():
    diff = V._first_difference(sf.s(2) + sf.s(1), sf.s(2) + sf.s(1) * 2)
    assert diff == {"degree": 1, "partition": [1], "lhs": "1", "rhs": "2"}
    assert V._first_difference(sf.s(2), sf.s(2)) is None


def test_reports_are_deterministic_without_timing():
    a = V.check_rational(2, 1).to_json_obj(timing=False)
    b = V.check_rational(2, 1).to_json_obj(timing=False)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert "millis" not in a and len(a["lhs_hash"]) == 64


def test_exhaustive_checks_small():
    assert V.check_lemma_cdinv(3, 3, 1).equal
    assert V.check_phi(4).equal
    assert V.check_psi(2, 1, 1).equal
    assert V.check_skewing(2, 2, (1,)).equal
    assert V.check_q1_refinement(2, 1, 1).equal


def test_macdonald_property_selection():
    r = V.check_macdonald(3, ("swap",))
    assert r.equal and r.lhs == 3
    with pytest.raises(ValueError):
        V.check_macdonald(2, ("bogus",))


def test_conjecture_reports_have_conjecture_status():
    r = V.check_conjectures("fall_square", {"n": 1, "k": 1})
    assert r.status == "conjecture" and r.equal
    with pytest.raises(KeyError):
        V.check_conjectures("nope", {})


def test_unknown_check_and_suite():
    with pytest.raises(KeyError):
        V.run_check("nope", {})
    with pytest.raises(KeyError):
        V.suite_tasks("nope", 1, 1, 1)


def test_suite_grid_respects_degree_bound():
    tasks = V.suite_tasks("main", 3, 3, 2)
    bound = sf.get_degree_bound()
    assert all(p["n"] + p["k"] * p["m"] <= bound for _, p in tasks)
    assert ("main", {"m": 1, "n": 1, "k": 1}) in tasks
