"""Modified Macdonald polynomials and the operators diagonal in their basis.

``H~_mu`` is computed from the combinatorial filling formula: a sum over all
fillings of the (French) diagram of ``mu`` weighted by ``q**inv * t**maj``,
collected by content so that the result lands directly in the monomial
basis.  Expansions in the Macdonald basis use the orthogonality of ``H~_mu``
for the ``*``-scalar product

    <p_la, p_mu>_* = delta * (-1)**(|mu| - l(mu)) * z_mu * prod (1 - q**mu_i)(1 - t**mu_i),
    <H~_mu, H~_mu>_* = prod_c (q**a(c) - t**(l(c)+1)) (t**l(c) - q**(a(c)+1)),

so each coefficient costs one exact division.  Per-degree tables live in a
:class:`MacCache`, optionally backed by JSON files.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from . import symfunc as sf
from .qtring import ONE, ZERO, QtRat, lincomb
from .symfunc import SymF, conjugate, partitions, z_lambda

__all__ = [
    "CellStats",
    "MacCache",
    "MacConstants",
    "cell_stats",
    "delta",
    "delta_prime",
    "get_cache",
    "htilde",
    "kostka",
    "mac_constants",
    "mac_expand",
    "mac_to_monomial",
    "nabla",
    "pi_op",
    "set_cache",
    "theta",
]

CACHE_VERSION = 1


# --------------------------------------------------------------------------
# cells and constants


@dataclass(frozen=True)
class CellStats:
    arm: int
    leg: int
    coarm: int
    coleg: int


def cell_stats(mu) -> dict:
    """``{(row, col): CellStats}`` with rows and columns counted from 0.

    Row ``i`` has ``mu[i]`` cells; ``arm`` counts cells to the right in the
    row, ``leg`` the cells beyond it in the column, and the co-statistics
    count the cells before it.
    """
    mu = tuple(mu)
    conj = conjugate(mu)
    out = {}
    for i, r in enumerate(mu):
        for j in range(r):
            out[(i, j)] = CellStats(arm=r - j - 1, leg=conj[j] - i - 1, coarm=j, coleg=i)
    return out


@dataclass(frozen=True)
class MacConstants:
    B_mu: QtRat
    Pi_mu: QtRat


def _qt_mono(i: int, j: int) -> QtRat:
    return QtRat.monomial(i, j)


def b_mu(mu, power: int = 1) -> QtRat:
    """``B_mu`` with q, t raised to ``power`` (i.e. ``p_power[B_mu]``)."""
    return lincomb((1, _qt_mono(power * c.coarm, power * c.coleg)) for c in cell_stats(mu).values())


@lru_cache(maxsize=None)
def mac_constants(mu) -> MacConstants:
    mu = sf._key(mu)
    pi = ONE
    for (i, j), c in cell_stats(mu).items():
        if (i, j) != (0, 0):
            pi = pi * (ONE - _qt_mono(c.coarm, c.coleg))
    return MacConstants(B_mu=b_mu(mu), Pi_mu=pi)


@lru_cache(maxsize=None)
def _star_norm(mu) -> QtRat:
    out = ONE
    for c in cell_stats(mu).values():
        out = out * (_qt_mono(c.arm, 0) - _qt_mono(0, c.leg + 1)) * (_qt_mono(0, c.leg) - _qt_mono(c.arm + 1, 0))
    return out


@lru_cache(maxsize=None)
def _star_weight(la) -> QtRat:
    """``<p_la, p_la>_*``."""
    w = QtRat(sf._sign_eps(la) * z_lambda(la))
    for part in la:
        w = w * (ONE - _qt_mono(part, 0)) * (ONE - _qt_mono(0, part))
    return w


# --------------------------------------------------------------------------
# the filling formula


def _htilde_monomial(mu: tuple) -> dict:
    """Monomial-basis coefficients of ``H~_mu`` from the filling formula."""
    n = sum(mu)
    if n == 0:
        return {(): ONE}
    stats = cell_stats(mu)
    # reading order: rows from the top (largest row index) down, left to right
    cells = [(i, j) for i in range(len(mu) - 1, -1, -1) for j in range(mu[i])]
    pos = {c: k for k, c in enumerate(cells)}
    # for each cell, the earlier cells it can form an inversion with
    same_row_left = [[pos[(i, jj)] for jj in range(j)] for (i, j) in cells]
    # cells of the row above lying strictly to the right (they are read earlier)
    above_right = [
        [pos[(i + 1, jj)] for jj in range(j + 1, mu[i + 1])] if i + 1 < len(mu) else []
        for (i, j) in cells
    ]
    above = [pos.get((i + 1, j)) if i + 1 < len(mu) and j < mu[i + 1] else None for (i, j) in cells]
    maj_w = [stats[c].leg + 1 for c in cells]
    arm_w = [stats[c].arm for c in cells]

    out = {}
    for la in partitions(n):
        counts: dict = {}
        remaining = list(la)
        values = [0] * n

        def rec(k: int, inv: int, maj: int):
            if k == n:
                key = (inv, maj)
                counts[key] = counts.get(key, 0) + 1
                return
            for v in range(len(remaining)):
                if not remaining[v]:
                    continue
                remaining[v] -= 1
                values[k] = v
                d_inv = 0
                for o in same_row_left[k]:
                    if values[o] > v:
                        d_inv += 1
                for o in above_right[k]:
                    if values[o] > v:
                        d_inv += 1
                d_maj = 0
                a = above[k]
                if a is not None and values[a] > v:
                    d_maj = maj_w[a]
                    d_inv -= arm_w[a]
                rec(k + 1, inv + d_inv, maj + d_maj)
                remaining[v] += 1

        rec(0, 0, 0)
        poly = lincomb((c, _qt_mono(i, j)) for (i, j), c in counts.items())
        if poly:
            out[la] = poly
    return out


# --------------------------------------------------------------------------
# cache


class MacCache:
    """Per-degree tables of ``H~_mu``; optionally persisted as JSON files.

    Each file ``mac_deg_<n>.json`` holds the monomial expansions of all
    ``H~_mu`` with ``mu |- n`` and the inverse transition matrix
    (coefficient of ``H~_mu`` in ``m_nu``).
    """

    def __init__(self, directory: str | os.PathLike | None = None):
        self.directory = Path(directory) if directory else None
        self._htilde: dict = {}
        self._htilde_p: dict = {}
        self._inverse: dict = {}
        self._locks: dict = {}
        self._guard = threading.Lock()

    def _lock(self, n: int) -> threading.Lock:
        with self._guard:
            return self._locks.setdefault(n, threading.Lock())

    def path(self, n: int) -> Path | None:
        return self.directory / f"mac_deg_{n}.json" if self.directory else None

    def htilde_table(self, n: int) -> dict:
        """``{mu: {la: coeff}}`` in the monomial basis for all ``mu |- n``."""
        tab = self._htilde.get(n)
        if tab is not None:
            return tab
        with self._lock(n):
            if n in self._htilde:
                return self._htilde[n]
            sf._check_degree(n)
            if not self._load(n):
                self._htilde[n] = {mu: _htilde_monomial(mu) for mu in partitions(n)}
                if self.directory is not None:
                    self._save(n)
            return self._htilde[n]

    def htilde_power(self, n: int) -> dict:
        tab = self._htilde_p.get(n)
        if tab is None:
            tab = {
                mu: sf.to_basis(SymF._raw("monomial", terms), "power").terms
                for mu, terms in self.htilde_table(n).items()
            }
            self._htilde_p[n] = tab
        return tab

    def inverse_matrix(self, n: int) -> dict:
        """``{nu: {mu: c}}`` with ``m_nu = sum_mu c * H~_mu``."""
        tab = self._inverse.get(n)
        if tab is None:
            tab = {nu: _expand_homogeneous(sf.to_basis(sf.m(nu), "power").terms, n, self) for nu in partitions(n)}
            self._inverse[n] = tab
        return tab

    # persistence
    def _load(self, n: int) -> bool:
        path = self.path(n)
        if path is None or not path.exists():
            return False
        try:
            obj = json.loads(path.read_text())
        except (OSError, ValueError):
            return False
        if obj.get("version") != CACHE_VERSION or obj.get("degree") != n:
            return False
        self._htilde[n] = {
            tuple(ent["mu"]): SymF.from_json_obj(ent["expansion"]).terms for ent in obj["htilde"]
        }
        if "inverse" in obj:
            self._inverse[n] = {
                tuple(row["nu"]): {tuple(c["mu"]): QtRat.parse(c["coeff"]) for c in row["coeffs"]}
                for row in obj["inverse"]
            }
        return True

    def to_json_obj(self, n: int) -> dict:
        tab = self.htilde_table(n)
        inv = self.inverse_matrix(n)
        return {
            "version": CACHE_VERSION,
            "degree": n,
            "htilde": [
                {"mu": list(mu), "expansion": SymF._raw("monomial", tab[mu]).to_json_obj()}
                for mu in partitions(n)
            ],
            "inverse": [
                {
                    "nu": list(nu),
                    "coeffs": [{"mu": list(mu), "coeff": str(c)} for mu, c in sorted(inv[nu].items(), reverse=True)],
                }
                for nu in partitions(n)
            ],
        }

    def _save(self, n: int) -> None:
        path = self.path(n)
        if path is None:
            return
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(self.to_json_obj(n), indent=1))
        tmp.replace(path)

    def rebuild(self, max_degree: int) -> list[Path]:
        """Recompute and (if file-backed) write all degrees up to ``max_degree``."""
        written = []
        for n in range(max_degree + 1):
            self._htilde.pop(n, None)
            self._htilde_p.pop(n, None)
            self._inverse.pop(n, None)
            if self.directory is not None and self.path(n).exists():
                self.path(n).unlink()
            self.htilde_table(n)
            self.inverse_matrix(n)
            if self.directory is not None:
                self._save(n)
                written.append(self.path(n))
        return written


_CACHE = MacCache(os.environ.get("SHUFFLE_LAB_CACHE") or None)


def get_cache() -> MacCache:
    return _CACHE


def set_cache(cache: MacCache) -> None:
    global _CACHE
    _CACHE = cache


# --------------------------------------------------------------------------
# public polynomial access


def htilde(mu) -> SymF:
    """The modified Macdonald polynomial ``H~_mu`` in the monomial basis."""
    mu = sf._key(mu)
    return SymF._raw("monomial", dict(get_cache().htilde_table(sum(mu))[mu]))


def kostka(la, mu) -> QtRat:
    """The Schur coefficient of ``s_la`` in ``H~_mu``."""
    la, mu = sf._key(la), sf._key(mu)
    if sum(la) != sum(mu):
        raise ValueError("kostka needs |la| == |mu|")
    return sf.to_basis(htilde(mu), "schur").coeff(la)


# --------------------------------------------------------------------------
# Macdonald-basis expansions


def _expand_homogeneous(p_terms: dict, n: int, cache: MacCache) -> dict:
    """Macdonald coefficients of a degree-``n`` power-sum expansion."""
    hp = cache.htilde_power(n)
    out = {}
    for mu in partitions(n):
        col = hp[mu]
        pairs = [(col[la] * _star_weight(la), c) for la, c in p_terms.items() if la in col]
        if not pairs:
            continue
        v = lincomb(pairs)
        if v:
            out[mu] = v / _star_norm(mu)
    return out


def mac_expand(f: SymF) -> SymF:
    """Coefficients ``c_mu`` with ``f = sum c_mu H~_mu``."""
    if f.basis == "macdonald":
        return f
    pt = sf.to_basis(f, "power").terms
    by_degree: dict = {}
    for la, c in pt.items():
        by_degree.setdefault(sum(la), {})[la] = c
    out = {}
    cache = get_cache()
    for n, terms in by_degree.items():
        out.update(_expand_homogeneous(terms, n, cache))
    return SymF._raw("macdonald", out)


def mac_to_monomial(f: SymF) -> SymF:
    """Substitute the monomial expansions of ``H~_mu``."""
    if f.basis != "macdonald":
        return sf.to_basis(f, "monomial")
    by_degree: dict = {}
    for mu, c in f.terms.items():
        by_degree.setdefault(sum(mu), []).append((mu, c))
    out = {}
    cache = get_cache()
    for n, items in by_degree.items():
        tab = cache.htilde_table(n)
        acc: dict = {}
        for mu, c in items:
            for la, k in tab[mu].items():
                acc.setdefault(la, []).append((k, c))
        for la, pairs in acc.items():
            v = lincomb(pairs)
            if v:
                out[la] = v
    return SymF._raw("monomial", out)


def _eigen_apply(F: SymF, eigen) -> SymF:
    """Scale each ``H~_mu`` component of ``F`` by ``eigen(mu)``; keep F's basis."""
    mac = mac_expand(F)
    out = {}
    for mu, c in mac.terms.items():
        v = c * eigen(mu)
        if v:
            out[mu] = v
    res = SymF._raw("macdonald", out)
    if F.basis == "macdonald":
        return res
    return sf.to_basis(mac_to_monomial(res), F.basis)


def _pleth_at(f: SymF, mu, minus_one: bool) -> QtRat:
    def alphabet(k):
        v = b_mu(mu, k)
        return v - ONE if minus_one else v

    return sf.pleth_eval(f, alphabet)


@lru_cache(maxsize=None)
def _e_at_b(mu) -> QtRat:
    return _pleth_at(sf.e(sum(mu)), mu, False)


def nabla(F: SymF) -> SymF:
    """``H~_mu -> e_|mu|[B_mu] H~_mu``."""
    return _eigen_apply(F, _e_at_b)


def delta(f: SymF, F: SymF) -> SymF:
    """``H~_mu -> f[B_mu] H~_mu``."""
    memo: dict = {}

    def eig(mu):
        if mu not in memo:
            memo[mu] = _pleth_at(f, mu, False)
        return memo[mu]

    return _eigen_apply(F, eig)


def delta_prime(f: SymF, F: SymF) -> SymF:
    """``H~_mu -> f[B_mu - 1] H~_mu``."""
    memo: dict = {}

    def eig(mu):
        if mu not in memo:
            memo[mu] = _pleth_at(f, mu, True)
        return memo[mu]

    return _eigen_apply(F, eig)


def pi_op(F: SymF, inverse: bool = False) -> SymF:
    """``H~_mu -> Pi_mu**(+-1) H~_mu`` (with ``Pi_empty = 1``)."""
    if inverse:
        return _eigen_apply(F, lambda mu: mac_constants(mu).Pi_mu.inverse())
    return _eigen_apply(F, lambda mu: mac_constants(mu).Pi_mu)


def _over_m_rule(k: int) -> QtRat:
    return ((ONE - _qt_mono(k, 0)) * (ONE - _qt_mono(0, k))).inverse()


def theta(f: SymF, F: SymF) -> SymF:
    """The Theta operator ``Theta_f F``, extended bilinearly over homogeneous parts.

    For ``f`` of degree k and ``F`` of degree m: zero if k >= 1 and m = 0,
    ``f * F`` if k = m = 0, and ``Pi f[X/M] Pi^{-1} F`` otherwise.  The result
    is returned in the power-sum basis.
    """
    fp = sf.to_basis(f, "power")
    Fp = sf.to_basis(F, "power")
    total = SymF.zero("power")
    for k in fp.degrees():
        fk = fp.component(k)
        fk_over_m = sf.pleth_transform(fk, _over_m_rule)
        for m in Fp.degrees():
            Fm = Fp.component(m)
            if m == 0:
                if k == 0:
                    total = total + sf.mul(fk, Fm)
                continue
            inner = sf.mul(fk_over_m, pi_op(Fm, inverse=True))
            total = total + pi_op(inner)
    return total
