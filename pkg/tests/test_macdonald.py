from __future__ import annotations

import json

import pytest

from shuffle_lab import macdonald as mac
from shuffle_lab import symfunc as sf
from shuffle_lab.qtring import ONE, QtRat

q = QtRat.monomial(1, 0)
t = QtRat.monomial(0, 1)


def test_small_modified_macdonald_polynomials():
    assert mac.htilde((1,)) == sf.s(1)
    assert mac.htilde((2,)) == sf.s(2) + sf.s(1, 1) * q
    assert mac.htilde((1, 1)) == sf.s(2) + sf.s(1, 1) * t
    assert mac.htilde((2, 1)) == sf.s(3) + sf.s(2, 1) * (q + t) + sf.s(1, 1, 1) * (q * t)


@pytest.mark.parametrize("n", range(1, 6))
def test_htilde_at_q_t_one_is_h1_power(n):
    for mu in sf.partitions(n):
        assert mac.htilde(mu).specialize(q=1, t=1) == sf.to_basis(sf.h(*([1] * n)), "monomial")


@pytest.mark.parametrize("n", range(1, 5))
def test_kostka_nonnegative_and_symmetric(n):
    for mu in sf.partitions(n):
        assert mac.htilde(mu).swap_qt() == mac.htilde(sf.conjugate(mu))
        for la in sf.partitions(n):
            c = mac.kostka(la, mu)
            assert c.is_polynomial()
            assert all(v >= 0 and v.denominator == 1 for v in c.terms().values())


def test_nabla_on_e2_and_catalan():
    assert mac.nabla(sf.e(2)) == sf.s(2) + sf.s(1, 1) * (q + t)
    cat = sf.hall_inner(mac.nabla(sf.e(3)), sf.e(3))
    assert cat == q**3 + q * q * t + q * t * t + t**3 + q * t


def test_nabla_of_htilde_is_eigenvalue():
    mu = (2, 1)
    assert mac.nabla(mac.htilde(mu)) == mac.htilde(mu) * (q * t)


@pytest.mark.parametrize("n", range(1, 5))
def test_nabla_equals_delta_en_in_degree_n(n):
    for la in sf.partitions(n):
        f = sf.s(*la)
        assert mac.nabla(f) == mac.delta(sf.e(n), f)


def test_mac_expand_inverts():
    f = sf.s(2, 1) + sf.s(3) * q
    assert sf.to_basis(mac.mac_expand(f), "monomial") == sf.to_basis(f, "monomial")


def test_theta_e0_is_identity():
    f = sf.s(2, 1)
    assert mac.theta(sf.e(0), f) == f


def test_file_backed_cache_round_trip(tmp_path):
    cache = mac.MacCache(tmp_path)
    written = cache.rebuild(3)
    assert [p.name for p in written] == [f"mac_deg_{n}.json" for n in range(4)]
    obj = json.loads((tmp_path / "mac_deg_3.json").read_text())
    assert obj["degree"] == 3 and len(obj["htilde"]) == 3
    fresh = mac.MacCache(tmp_path)
    assert fresh.htilde_table(3) == cache.htilde_table(3)
    old = mac.get_cache()
    try:
        mac.set_cache(fresh)
        assert mac.htilde((2, 1)) == sf.s(3) + sf.s(2, 1) * (q + t) + sf.s(1, 1, 1) * (q * t)
    finally:
        mac.set_cache(old)


def test_corrupt_cache_file_is_recomputed(tmp_path):
    (tmp_path / "mac_deg_2.json").write_text("not json")
    cache = mac.MacCache(tmp_path)
    assert set(cache.htilde_table(2)) == {(2,), (1, 1)}
