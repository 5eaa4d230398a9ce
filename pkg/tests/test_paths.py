from __future__ import annotations

import json
from fractions import Fraction
from itertools import product
from math import comb

import pytest

from shuffle_lab import macdonald as mac
from shuffle_lab import paths as P
from shuffle_lab import symfunc as sf
from shuffle_lab.paths import Path

SEVEN_BY_NINE = "NEENNNEENNNEENNE"
DECORATED_9x6 = "NNEENNE*E*ENENE*EE"


def classical_square_dinv(p: Path) -> int:
    """Parking-function dinv from row areas (independent of the attack relation)."""
    x = y = 0
    rows = []  # (area of the row, label) bottom to top
    w = iter(p.labels)
    for s in p.steps:
        if s == "V":
            rows.append((y - x, next(w)))
            y += 1
        else:
            x += 1
    out = 0
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            (ai, li), (aj, lj) = rows[i], rows[j]
            if ai == aj and li < lj:
                out += 1
            elif ai == aj + 1 and li > lj:
                out += 1
    return out


def test_area_word_of_seven_by_nine_path():
    p = Path.parse(SEVEN_BY_NINE)
    assert (p.width, p.height) == (7, 9)
    prof = P.area_profile(p)
    expected = tuple(Fraction(a, 7) for a in (-2, -11, 1, -8, 4, -5, 0))
    assert prof.vertical_area_word == expected
    assert prof.shift == Fraction(11, 7)
    assert prof.area == 5


def test_decorated_example_area_and_cdinv():
    p = Path.parse(DECORATED_9x6)
    assert (p.width, p.height, p.k) == (9, 6, 3)
    assert p.is_dyck()
    assert P.area_profile(p).area == 3
    assert P.cdinv_D(p) == P.cdinv_C(p)


def test_small_statistics():
    assert P.cdinv(Path.parse("ENNE")) == 1
    assert P.dinv(Path.parse("N(1)EN(2)E")) == 1


def test_text_round_trip_with_big_labels():
    p = Path.parse("N(1)EEN(2)N(4)E*E")
    assert Path.parse(p.to_text()) == p
    q = Path.parse("N(2)N(1bar)E")
    assert P.is_big(q.labels[1]) and q.labels[1] == P.big(1)
    assert Path.parse(q.to_text()) == q


@pytest.mark.parametrize("bad", ["NX", "N(0)E", "NE*", "N(2)N(1)E", ""])
def test_malformed_paths_rejected(bad):
    with pytest.raises(ValueError):
        Path.parse(bad)


@pytest.mark.parametrize("w,h", [(1, 1), (2, 3), (3, 3), (4, 2)])
def test_path_counts(w, h):
    # paths end with a horizontal step
    assert sum(1 for _ in P.enumerate_paths(w, h)) == comb(w + h - 1, h)


def test_dyck_counts():
    assert sum(1 for _ in P.enumerate_paths(3, 3, dyck_only=True)) == 5
    assert sum(1 for _ in P.enumerate_paths(3, 5, dyck_only=True)) == 7
    assert sum(1 for _ in P.enumerate_paths(2, 1, label_alphabet=1)) == 2
    # parking functions of size 3
    pf = [p for p in P.enumerate_paths(3, 3, label_alphabet=3, dyck_only=True)
          if sorted(p.labels) == [1, 2, 3]]
    assert len(pf) == 16


def test_enumeration_has_no_duplicates():
    seen = list(P.enumerate_paths(3, 2, k=1, label_alphabet=2))
    assert len(seen) == len(set(seen))


@pytest.mark.parametrize("n", [2, 3])
def test_square_dinv_matches_parking_function_dinv(n):
    for p in P.enumerate_paths(n, n, label_alphabet=n, dyck_only=True):
        assert P.dinv(p) == classical_square_dinv(p), p.to_text()


def test_square_generating_function_is_nabla_en():
    for n in (1, 2, 3):
        assert P.gen_fun(P.lrd(n, n)) == sf.to_basis(mac.nabla(sf.e(n)), "monomial")


def test_cdinv_definitions_agree_small():
    for w, h, k in product(range(1, 4), range(1, 4), range(0, 2)):
        for p in P.enumerate_paths(w, h, k=k):
            assert P.cdinv_D(p) == P.cdinv_C(p)


def test_ens_replaces_decorated_steps_by_south_steps():
    p = Path.parse(DECORATED_9x6)
    e = P.ens(p)
    assert e.word.count("S*") == 3
    assert e.word.replace("S*", "") .count("E") == 6
    assert P.from_ens(e) == p
    # distances on the straight ENS diagonal match the broken-diagonal heights
    dist = e.vertical_distances()
    for i in range(len(p.steps)):
        if p.steps[i] == "V" or i in p.decorations or i in p.horizontal_steps:
            if i in dist:
                assert dist[i] == p.v(i)


def test_phi_small_words():
    assert P.phi_word((1, 2, 3)) == (1, 2, 3)
    for w in [(1, 1, 2), (2, 1, 1), (1, 1, 3), (3, 1, 1)]:
        try:
            v = P.phi_word(w)
        except ValueError:
            continue
        assert P.phi_word(v) == w


def test_psi_round_trip_and_area():
    for pt in P.enumerate_paths(2, 3, label_alphabet=1, big_content=(1, 1)):
        p, f = P.psi(pt, 2)
        assert p.k == 2
        assert P.psi_inverse(p, f) == pt
        assert P.area_profile(p).area == P.area_profile(pt).area


def test_fall_labelings_are_allowable():
    p = Path.parse(DECORATED_9x6)
    labs = list(P.fall_labelings(p))
    assert labs and all(f.is_allowable() for f in labs)
    assert P.fixed_point_labeling(p) in labs


def test_symmetry_violation_detected(monkeypatch):
    # a fake attack relation in which step 0 attacks steps 1 and 2 of every
    # staircase path breaks the x1 <-> x2 symmetry of the content (2, 1)
    def fake_pairs(p):
        return [(0, 1), (0, 2)] if p.steps == ("V", "H") * 3 else []

    monkeypatch.setattr(P, "_attack_pairs", fake_pairs)
    with pytest.raises(P.SymmetryViolation):
        P.gen_fun(P.lrp(3, 3))


def test_json_export(tmp_path):
    p = Path.parse("N(1)EN(2)E*E")
    out = tmp_path / "p.json"
    out.write_text(json.dumps(p.to_json_obj()))
    obj = json.loads(out.read_text())
    assert obj["stats"]["dinv"] == 1 and obj["decorations"] == [3]


def test_dinv_nonnegative_on_small_paths():
    for w, h, k in product(range(1, 4), range(1, 4), range(0, 2)):
        for p in P.enumerate_paths(w, h, k=k, label_alphabet=h):
            assert P.dinv(p) >= 0, p.to_text()
