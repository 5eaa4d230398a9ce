"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

All comparisons are exact.  Criterion 11 covers conjectural identities: a
mismatch there is reported as a finding (xfail) rather than a failure.
"""

from __future__ import annotations

from fractions import Fraction

import pytest

from shuffle_lab import paths as P
from shuffle_lab import verify as V
from shuffle_lab.paths import Path


def report(capsys, number: int, title: str, ok: bool, detail: str = "") -> None:
    with capsys.disabled():
        line = f"\nCRITERION {number:>2}: {'PASS' if ok else 'FAIL'}  {title}"
        print(line + (f"  [{detail}]" if detail else ""))


def failures(reports) -> list:
    return [r.to_text() for r in reports if not r.equal]


def test_criterion_01_area_word_golden(capsys):
    prof = P.area_profile(Path.parse("NEENNNEENNNEENNE"))
    word = tuple(Fraction(a, 7) for a in (-2, -11, 1, -8, 4, -5, 0))
    ok = prof.vertical_area_word == word and prof.shift == Fraction(11, 7) and prof.area == 5
    report(capsys, 1, "7x9 path: area word, shift 11/7, area 5", ok)
    assert ok


def test_criterion_02_decorated_area_golden(capsys):
    p = Path.parse("NNEENNE*E*ENENE*EE")
    ok = (p.width, p.height, p.k) == (9, 6, 3) and p.is_dyck() and P.area_profile(p).area == 3
    report(capsys, 2, "9x6 decorated Dyck path (k=3) has area 3", ok)
    assert ok


def test_criterion_03_cdinv_definitions_agree(capsys):
    r = V.check_lemma_cdinv(5, 5, 2)
    report(capsys, 3, "cdinv_D = cdinv_C, width/height <= 5, k <= 2", r.equal,
           f"{r.rhs}/{r.lhs} paths")
    assert r.equal, r.to_text()


def test_criterion_04_phi_involution(capsys):
    r = V.check_phi(6)
    report(capsys, 4, "phi: involution, sign-reversing, unique fixed point, tied inversions (k <= 6)",
           r.equal, f"{r.rhs}/{r.lhs} cases")
    assert r.equal, r.to_text()


def test_criterion_05_psi_bijection(capsys):
    r = V.check_psi(3, 2, 2)
    report(capsys, 5, "psi: round trips, area/shift, tdinv split, dinv equality (m<=3, n<=2, k<=2)",
           r.equal, f"{r.rhs}/{r.lhs} cases")
    assert r.equal, r.to_text()


MAIN_CASES = [(1, 0, 1), (1, 1, 1), (2, 1, 0), (2, 1, 1), (1, 2, 1), (2, 2, 1), (1, 1, 2)]


def test_criterion_06_fall_decorated_shuffle_theorem(capsys):
    bad = failures(V.check_main(m, n, k) for m, n, k in MAIN_CASES)
    report(capsys, 6, f"decorated rational shuffle theorem, {len(MAIN_CASES)} cases", not bad)
    assert not bad, bad


RATIONAL_CASES = [(1, 1), (2, 1), (1, 2), (3, 2), (2, 3), (2, 2), (3, 3)]


def test_criterion_07_rational_shuffle_theorem(capsys):
    bad = failures(V.check_rational(m, n) for m, n in RATIONAL_CASES)
    report(capsys, 7, f"rational shuffle theorem (k=0), {len(RATIONAL_CASES)} cases", not bad)
    assert not bad, bad


RECT_CASES = [(1, 1, 1), (2, 1, 1), (3, 1, 1), (3, 2, 1)]


def test_criterion_08_rectangular_theorem_coprime(capsys):
    reports = [V.check_rectangular(m, n, k) for m, n, k in RECT_CASES]
    assert all(r.status == "theorem" for r in reports)
    bad = failures(reports)
    report(capsys, 8, "rectangular paths, gcd = 1, 4 cases", not bad)
    assert not bad, bad


def test_criterion_09_skewing_and_schur_expansion(capsys):
    reports = [V.check_schur_expansion(4, 3)]
    for m in range(1, 4):
        for n in range(1, 4):
            for alpha in ((1,), (2,), (1, 1), (0, 1)):
                if sum(alpha) <= n:
                    reports.append(V.check_skewing(m, n, alpha))
    bad = failures(reports)
    report(capsys, 9, "h-skewing via big labels (m,n <= 3, |alpha| <= 2); rectangle h-expansion",
           not bad, f"{len(reports)} checks")
    assert not bad, bad


def test_criterion_10_macdonald_sanity(capsys):
    reports = [V.check_macdonald(n, ("swap",)) for n in range(1, 7)]
    reports += [V.check_macdonald(n, ("kostka",)) for n in range(1, 6)]
    reports += [V.check_macdonald(n, ("nabla",)) for n in range(1, 5)]
    bad = failures(reports)
    report(capsys, 10, "q/t swap = conjugation (n<=6), Kostka >= 0 (n<=5), nabla = Delta_en (n<=4)",
           not bad)
    assert not bad, bad


def test_criterion_11_conjecture_dashboard(capsys):
    tasks = [t for t in V.suite_tasks("conjectures", 3, 3, 2)]
    reports = [V.run_check(cid, params) for cid, params in tasks]
    assert all(r.status == "conjecture" for r in reports)
    bad = failures(reports)
    report(capsys, 11, "fall square, Schroder scalar product, Theta identity", not bad,
           f"{len(reports)} checks")
    if bad:
        pytest.xfail("conjecture findings: " + "; ".join(bad))


def test_criterion_12_q1_fiber_sums(capsys):
    reports = [V.check_q1_refinement(m, n, k)
               for m in range(1, 4) for n in range(0, 3) for k in range(0, 3)]
    bad = failures(reports)
    report(capsys, 12, "q=1 fibers over fall compositions sum to the total (m<=3, n<=2, k<=2)",
           not bad, f"{len(reports)} checks")
    assert not bad, bad
