"""The operators ``Q_{m,n}`` and the symmetric functions ``e_{m,n}``, ``p_{m,n}``.

Base cases: ``Q_{1,0} = D_0`` and ``Q_{0,1} = -e_1 *``.  Every other ``Q_{m,n}``
is defined recursively from a split ``(m, n) = (a, b) + (c, d)`` with
``a*d - b*c = gcd(m, n)``:

    Q_{m,n} = (Q_{c,d} Q_{a,b} - Q_{a,b} Q_{c,d}) / M,   M = (1 - q)(1 - t).

All work happens in the power-sum basis.  ``D_0`` acts there by the
plethystic formula ``D_0 F = F[X + M/z] Exp[-zX] |_{z^0}``, i.e.

    D_0 p_la = sum over sub-multisets mu of la of
               (-1)**|mu| * prod_i p_{mu_i}[M] * binom-multiplicity * p_{la - mu} * e_|mu|,

which agrees with ``1 - M Delta_{e_1}`` (that route is available as an
independent cross-check).  Images of single power sums are memoized per
``(m, n)``.
"""

from __future__ import annotations

import threading
from collections import Counter
from fractions import Fraction
from itertools import product as iproduct
from math import comb, gcd

from . import symfunc as sf
from .qtring import ONE, ZERO, QtRat, lincomb
from .symfunc import SymF

__all__ = [
    "SplitChoice",
    "d0",
    "e_mn",
    "f_ab",
    "p_mn",
    "q_operator",
    "split",
    "split_choices",
]

_Q = QtRat.monomial(1, 0)
_T = QtRat.monomial(0, 1)
M = (ONE - _Q) * (ONE - _T)


class SplitChoice(tuple):
    """``(a, b, c, d)`` with ``a + c = m``, ``b + d = n`` and ``ad - bc = gcd(m, n)``."""

    def __new__(cls, a, b, c, d):
        return super().__new__(cls, (a, b, c, d))

    a = property(lambda self: self[0])
    b = property(lambda self: self[1])
    c = property(lambda self: self[2])
    d = property(lambda self: self[3])


def split_choices(m: int, n: int) -> list[SplitChoice]:
    """All valid splits of ``(m, n)`` into nonnegative pairs."""
    g = gcd(m, n)
    out = []
    for a in range(0, m + 1):
        for b in range(0, n + 1):
            c, d = m - a, n - b
            if a * d - b * c == g and (a, b) != (0, 0) and (c, d) != (0, 0):
                out.append(SplitChoice(a, b, c, d))
    return out


def split(m: int, n: int) -> SplitChoice:
    """The canonical split: the valid ``(a, b)`` of largest slope ``b / a``."""
    if (m, n) in ((1, 0), (0, 1)):
        raise ValueError(f"({m}, {n}) is a base case and is not split")
    choices = split_choices(m, n)
    if not choices:
        raise ValueError(f"Q_{{{m},{n}}} has no valid split")
    return max(choices, key=lambda s: Fraction(s.b, s.a) if s.a else Fraction(10 ** 9))


# --------------------------------------------------------------------------
# vectors in the power-sum basis: dict partition -> QtRat


def _lin(items) -> dict:
    """Sum ``coeff * vector`` over ``items`` (coeff a QtRat or rational)."""
    acc: dict = {}
    for coeff, vec in items:
        if not coeff:
            continue
        for la, c in vec.items():
            acc.setdefault(la, []).append((coeff, c))
    out = {}
    for la, pairs in acc.items():
        v = lincomb(pairs)
        if v:
            out[la] = v
    return out


def _sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for la, c in b.items():
        v = out.get(la)
        v = -c if v is None else v - c
        if v:
            out[la] = v
        else:
            out.pop(la, None)
    return out


def _remove_parts(la: tuple, mu: tuple) -> tuple:
    cl = Counter(la)
    cl.subtract(Counter(mu))
    return tuple(sorted(cl.elements(), reverse=True))


def _sub_multisets(la: tuple):
    """``(mu, multiplicity)`` for each sub-multiset ``mu`` of the parts of ``la``."""
    cnt = sorted(Counter(la).items(), reverse=True)
    ranges = [range(mk + 1) for _, mk in cnt]
    for choice in iproduct(*ranges):
        mult = 1
        parts = []
        for (k, mk), j in zip(cnt, choice):
            mult *= comb(mk, j)
            parts.extend([k] * j)
        yield tuple(parts), mult


def _p_of_m(k: int) -> QtRat:
    return (ONE - QtRat.monomial(k, 0)) * (ONE - QtRat.monomial(0, k))


class QEngine:
    """Memoized images ``Q_{m,n}(p_la)``."""

    def __init__(self, split_rule=split):
        self.split_rule = split_rule
        self._memo: dict = {}
        self._lock = threading.Lock()

    # -- base cases --
    def d0_column(self, la: tuple) -> dict:
        pieces = []
        for mu, mult in _sub_multisets(la):
            size = sum(mu)
            coeff = QtRat(-mult if size % 2 else mult)
            for part in mu:
                coeff = coeff * _p_of_m(part)
            rest = _remove_parts(la, mu)
            pieces.append((coeff, {tuple(sorted(rest + nu, reverse=True)): c
                                   for nu, c in sf.e_power_terms(size).items()}))
        return _lin(pieces)

    def column(self, m: int, n: int, la: tuple) -> dict:
        key = (m, n, la)
        got = self._memo.get(key)
        if got is not None:
            return got
        if (m, n) == (1, 0):
            val = self.d0_column(la)
        elif (m, n) == (0, 1):
            val = {tuple(sorted(la + (1,), reverse=True)): -ONE}
        else:
            a, b, c, d = self.split_rule(m, n)
            first = self.apply(c, d, self.apply(a, b, {la: ONE}))
            second = self.apply(a, b, self.apply(c, d, {la: ONE}))
            val = {}
            for nu, v in _sub(first, second).items():
                w = v.divide_exact_poly(M)
                if w:
                    val[nu] = w
        with self._lock:
            self._memo[key] = val
        return val

    def apply(self, m: int, n: int, vec: dict) -> dict:
        if len(vec) == 1:
            (la, c), = vec.items()
            col = self.column(m, n, la)
            return col if c == ONE else {nu: v * c for nu, v in col.items()}
        return _lin((c, self.column(m, n, la)) for la, c in vec.items())


_ENGINE = QEngine()


def get_engine() -> QEngine:
    return _ENGINE


def _check_pair(m: int, n: int) -> None:
    if m < 0 or n < 0 or (m, n) == (0, 0):
        raise ValueError(f"Q_{{{m},{n}}} is undefined")


def q_operator(m: int, n: int, F: SymF, engine: QEngine | None = None) -> SymF:
    """Apply ``Q_{m,n}`` to ``F``; the result is in the power-sum basis."""
    _check_pair(m, n)
    eng = engine or _ENGINE
    sf._check_degree(F.degree + n)
    vec = sf.to_basis(F, "power").terms
    if not vec:
        return SymF.zero()
    return SymF._raw("power", eng.apply(m, n, vec))


def d0(F: SymF, engine: str = "plethystic") -> SymF:
    """``D_0 = Q_{1,0}`` by the plethystic formula, or via ``1 - M Delta_{e_1}``."""
    if engine == "plethystic":
        return q_operator(1, 0, F)
    if engine == "macdonald":
        from .macdonald import delta

        Fp = sf.to_basis(F, "power")
        return Fp - sf.to_basis(delta(sf.e(1), Fp), "power") * M
    raise ValueError(f"unknown engine {engine!r}")


# --------------------------------------------------------------------------
# F_{a,b}, e_{m,n}, p_{m,n}


def _u(k: int) -> QtRat:
    qk = QtRat.monomial(k, k)
    return (ONE - qk) / qk


def f_ab(a: int, b: int, f: SymF, engine: QEngine | None = None) -> SymF:
    """``F_{a,b}(f)`` for coprime ``(a, b)``, in the power-sum basis.

    ``f`` is written as ``sum c_la (qt/(qt-1))**l(la) h_la[(1-qt)/(qt) X]`` by
    undoing the plethysm (``p_k -> p_k / u_k``, ``u_k = (1 - q^k t^k)/(q^k t^k)``)
    and reading off h-coefficients.  Each such term is sent to the composite
    operator ``Q_{la_1 a, la_1 b} ... Q_{la_l a, la_l b}`` applied to 1 (operators
    of one slope commute, so the order is immaterial), times the sign
    ``(-1)**(|la| (b + 1))``.  The sign is trivial for odd ``b``; for even ``b`` it
    restores the normalization ``F_{a,b}(e_1) = (-1)**b Q_{a,b}(1)`` under which
    ``e_{a,b}`` is the (Schur-positive) rational Dyck path generating function.
    """
    if gcd(a, b) != 1:
        raise ValueError(f"F_{{{a},{b}}} needs a coprime pair")
    eng = engine or _ENGINE
    sf._check_degree(f.degree * b)
    undone = sf.pleth_transform(f, lambda k: _u(k).inverse())
    h_coeffs = sf.to_basis(undone, "homogeneous").terms
    neg_u1 = -_u(1)
    pieces = []
    for la, c in h_coeffs.items():
        coeff = c * neg_u1 ** len(la)
        if (sum(la) * (b + 1)) % 2:
            coeff = -coeff
        vec = {(): ONE}
        for part in sorted(la):
            vec = eng.apply(part * a, part * b, vec)
        pieces.append((coeff, vec))
    return SymF._raw("power", _lin(pieces))


def _reduce(m: int, n: int) -> tuple[int, int, int]:
    d = gcd(m, n)
    return m // d, n // d, d


def e_mn(m: int, n: int) -> SymF:
    """``e_{m,n} = F_{a,b}(e_d)`` with ``(m, n) = d (a, b)``; ``e_{m,0} = 1``."""
    if m < 1 or n < 0:
        raise ValueError("e_{m,n} needs m >= 1 and n >= 0")
    if n == 0:
        return SymF.one()
    a, b, d = _reduce(m, n)
    return f_ab(a, b, sf.e(d))


def p_mn(m: int, n: int) -> SymF:
    """``p_{m,n} = F_{a,b}(omega p_d) = (-1)**(d-1) F_{a,b}(p_d)``; ``p_{m,0} = 1``.

    The ``omega`` twist fixes the sign for even ``d`` so that ``p_{n,n}`` is
    ``nabla omega(p_n)``, the square-path generating function.
    """
    if m < 1 or n < 0:
        raise ValueError("p_{m,n} needs m >= 1 and n >= 0")
    if n == 0:
        return SymF.one()
    a, b, d = _reduce(m, n)
    val = f_ab(a, b, sf.p(d))
    return val if d % 2 else -val
