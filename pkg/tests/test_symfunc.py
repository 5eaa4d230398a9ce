from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
import sympy

from shuffle_lab import symfunc as sf
from shuffle_lab.qtring import ONE, QtRat
from shuffle_lab.symfunc import SymF

X = sympy.symbols("x1:5")


def bialternant(la, nvars=4):
    """Schur polynomial in ``nvars`` variables as a ratio of alternants (sympy)."""
    la = tuple(la) + (0,) * (nvars - len(la))
    xs = X[:nvars]
    num = sympy.Matrix(nvars, nvars, lambda i, j: xs[j] ** (la[i] + nvars - 1 - i)).det()
    den = sympy.Matrix(nvars, nvars, lambda i, j: xs[j] ** (nvars - 1 - i)).det()
    return sympy.expand(sympy.cancel(num / den))


def monomial_poly(f: SymF, nvars=4):
    """Evaluate a monomial expansion with constant coefficients in ``nvars`` variables."""
    out = 0
    for la, c in sf.to_basis(f, "monomial").terms.items():
        if len(la) > nvars:
            continue
        padded = la + (0,) * (nvars - len(la))
        c = c.constant_value()
        for exps in set(itertools.permutations(padded)):
            out += sympy.Rational(c.numerator, c.denominator) * sympy.prod(
                x**e for x, e in zip(X[:nvars], exps))
    return sympy.expand(out)


@pytest.mark.parametrize("la", [(1,), (2,), (1, 1), (2, 1), (3, 1), (2, 2), (2, 1, 1), (3, 2)])
def test_schur_functions_match_bialternant(la):
    assert monomial_poly(sf.s(*la)) == bialternant(la)


@pytest.mark.parametrize("n", range(1, 6))
def test_basis_changes_round_trip(n):
    for la in sf.partitions(n):
        f = sf.s(*la)
        for b in ("monomial", "homogeneous", "elementary", "power"):
            assert sf.to_basis(sf.to_basis(f, b), "schur") == f


@pytest.mark.parametrize("n", range(1, 6))
def test_hall_inner_product_is_orthonormal_on_schur(n):
    parts = sf.partitions(n)
    for la, mu in itertools.product(parts, parts):
        expected = ONE if la == mu else QtRat(0)
        assert sf.hall_inner(sf.s(*la), sf.to_basis(sf.s(*mu), "power")) == expected


def test_omega_conjugates_schur():
    for la in sf.partitions(5):
        assert sf.omega(sf.s(*la)) == sf.s(*sf.conjugate(la))


def test_small_expansions():
    assert sf.to_basis(sf.s(2, 1), "monomial") == sf.m(2, 1) + sf.m(1, 1, 1) * 2
    half = QtRat.from_fraction(Fraction(1, 2))
    assert sf.to_basis(sf.h(2), "power") == (sf.p(2) + sf.p(1, 1)) * half


def test_jacobi_trudi_matches_schur():
    for n in range(1, 6):
        for la in sf.partitions(n):
            assert sf.jacobi_trudi(la) == sf.s(*la)


def test_perp_is_adjoint_to_multiplication():
    f, g, h = sf.s(2, 1), sf.e(2), sf.s(3, 2)
    assert sf.hall_inner(sf.mul(f, g), h) == sf.hall_inner(g, sf.perp(f, h))
    assert sf.perp(sf.h(1), sf.s(2, 1)) == sf.s(2) + sf.s(1, 1)


def test_allowable_compositions():
    got = dict(sf.allowable_compositions(3))
    assert got == {(1, 1, 1): 1, (1, 2, 0): -1, (2, 0, 1): -1, (3, 0, 0): 1}
    assert sf.is_allowable((2, 0, 1)) and not sf.is_allowable((2, 1, 0))
    assert sf.composition_sign((3, 0, 0)) == 1


@pytest.mark.parametrize("m,k", [(m, k) for m in range(1, 5) for k in range(0, 4)])
def test_rectangle_h_expansion_modulo_large_h(m, k):
    def reduce_mod(f):
        return {la: c for la, c in sf.to_basis(f, "homogeneous").terms.items()
                if not la or la[0] <= m}
    with sf.degree_bound((m - 1) * k):
        rect = sf.s(*([m - 1] * k)) if m > 1 and k else SymF.one()
        assert reduce_mod(sf.schur_rect_h_expansion(m, k)) == reduce_mod(rect)


def test_degree_bound_guards_and_context():
    bound = sf.get_degree_bound()
    with pytest.raises(sf.DegreeOverflowError):
        sf.to_basis(sf.p(*([1] * (bound + 1))), "schur")
    with sf.degree_bound(bound + 1):
        assert sf.get_degree_bound() == bound + 1
    assert sf.get_degree_bound() == bound


def test_json_round_trip(tmp_path):
    f = sf.s(2, 1) * (QtRat.monomial(1, 0) + QtRat.monomial(0, 2)) + sf.s(3)
    path = tmp_path / "f.json"
    path.write_text(f.to_json())
    assert SymF.from_json(path.read_text()) == f


def test_partitions_and_conjugate():
    assert len(sf.partitions(6)) == 11
    assert sf.conjugate((3, 1)) == (2, 1, 1)
