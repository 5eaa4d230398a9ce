"""Symmetric functions of bounded degree with coefficients in Q(q, t).

A :class:`SymF` is a finite expansion in one of the classical bases (monomial,
Schur, complete homogeneous, elementary, power sum) or in the modified
Macdonald basis.  Components of different degrees may coexist in one value.

All basis changes route through the monomial basis with transition matrices
built combinatorially and memoized per degree.  Algebraic operations
(products, skewing, the Hall pairing, omega, plethystic substitutions) work in
the power-sum basis, where each of them is diagonal or nearly so.
"""

from __future__ import annotations

import contextlib
import json
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .qtring import ONE, ZERO, QtRat, lincomb

__all__ = [
    "DegreeOverflowError",
    "Partition",
    "SymF",
    "allowable_compositions",
    "conjugate",
    "degree_bound",
    "get_degree_bound",
    "hall_inner",
    "jacobi_trudi",
    "mul",
    "omega",
    "partitions",
    "perp",
    "pleth_eval",
    "pleth_transform",
    "schur_rect_h_expansion",
    "set_degree_bound",
    "to_basis",
    "z_lambda",
]


class DegreeOverflowError(ValueError):
    """Raised when a computation needs tables beyond the configured degree bound."""


_DEGREE_BOUND = 8


def get_degree_bound() -> int:
    return _DEGREE_BOUND


def set_degree_bound(n: int) -> None:
    """Set the largest degree for which transition tables may be built."""
    global _DEGREE_BOUND
    if n < 0:
        raise ValueError("degree bound must be nonnegative")
    _DEGREE_BOUND = n


@contextlib.contextmanager
def degree_bound(n: int):
    """Temporarily raise (never lower) the degree bound."""
    old = _DEGREE_BOUND
    set_degree_bound(max(old, n))
    try:
        yield
    finally:
        set_degree_bound(old)


def _check_degree(n: int) -> None:
    if n > _DEGREE_BOUND:
        raise DegreeOverflowError(f"degree {n} exceeds the configured bound {_DEGREE_BOUND}")


# --------------------------------------------------------------------------
# partitions


class Partition(tuple):
    """A weakly decreasing tuple of positive integers."""

    def __new__(cls, parts=()):
        parts = tuple(int(x) for x in parts if x)
        if any(x < 0 for x in parts):
            raise ValueError(f"negative part in {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            parts = tuple(sorted(parts, reverse=True))
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def conjugate(self) -> "Partition":
        return Partition(conjugate(self))

    def __repr__(self):
        return f"Partition({list(self)})"


def _key(parts) -> tuple:
    """Normalize any iterable of parts to the sorted tuple used as a dict key."""
    t = tuple(x for x in parts if x)
    if any(t[i] < t[i + 1] for i in range(len(t) - 1)):
        t = tuple(sorted(t, reverse=True))
    return t


@lru_cache(maxsize=None)
def partitions(n: int, max_part: int | None = None) -> tuple:
    """All partitions of ``n`` in reverse-lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def conjugate(la) -> tuple:
    la = tuple(la)
    if not la:
        return ()
    return tuple(sum(1 for x in la if x > i) for i in range(la[0]))


@lru_cache(maxsize=None)
def z_lambda(la: tuple) -> int:
    """``z_la = prod_k k**m_k * m_k!`` for multiplicities ``m_k``."""
    out = 1
    for k, m in Counter(la).items():
        out *= k ** m * factorial(m)
    return out


def _sign_eps(la: tuple) -> int:
    """``(-1)**(|la| - l(la))``, the sign of omega on ``p_la``."""
    return -1 if (sum(la) - len(la)) % 2 else 1


# --------------------------------------------------------------------------
# transition matrices (rows: source basis index, cols: monomial index)


@lru_cache(maxsize=None)
def _kostka_row(la: tuple, mu: tuple) -> int:
    """Number of semistandard tableaux of shape ``la`` and content ``mu``.

    Peel off the largest letter: it fills a horizontal strip of size
    ``mu[-1]``.
    """
    if not mu:
        return 1 if not la else 0
    k = mu[-1]
    rest = mu[:-1]
    total = 0
    for nu in _horizontal_strips_below(la, k):
        total += _kostka_row(nu, rest)
    return total


def _horizontal_strips_below(la: tuple, k: int):
    """Partitions ``nu`` with ``la / nu`` a horizontal strip of size ``k``."""
    n = len(la)
    out = []

    def rec(i, remaining, acc):
        if i == n:
            if remaining == 0:
                out.append(_key(acc))
            return
        lo = la[i + 1] if i + 1 < n else 0
        for x in range(la[i], lo - 1, -1):
            take = la[i] - x
            if take > remaining:
                break
            rec(i + 1, remaining - take, acc + (x,))

    rec(0, k, ())
    return out


def _kostka(la: tuple, mu: tuple) -> int:
    # content order does not matter for the count; use mu sorted
    return _kostka_row(la, mu)


def _p_to_m_entry(la: tuple, mu: tuple) -> int:
    """Coefficient of ``m_mu`` in ``p_la``: ways to place parts into the slots of mu."""
    slots = list(mu)

    def rec(i):
        if i == len(la):
            return 1 if all(s == 0 for s in slots) else 0
        total = 0
        for j, s in enumerate(slots):
            if s >= la[i]:
                slots[j] -= la[i]
                total += rec(i + 1)
                slots[j] += la[i]
        return total

    return rec(0)


def _mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    return [[sum(a[i][r] * b[r][j] for r in range(k) if a[i][r] and b[r][j]) for j in range(m)] for i in range(n)]


def _mat_inv(a):
    """Exact inverse of a square matrix of Fractions by Gauss-Jordan elimination."""
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular transition matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        if pv != 1:
            aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


BASES = ("monomial", "schur", "homogeneous", "elementary", "power", "macdonald")
_ALIASES = {
    "m": "monomial",
    "s": "schur",
    "h": "homogeneous",
    "e": "elementary",
    "p": "power",
    "H": "macdonald",
    "mac": "macdonald",
}


def basis_name(b: str) -> str:
    b2 = _ALIASES.get(b, b)
    if b2 not in BASES:
        raise ValueError(f"unknown basis {b!r}")
    return b2


@lru_cache(maxsize=None)
def _to_m_matrix(basis: str, n: int):
    """Rows indexed by ``partitions(n)`` in ``basis``; columns by monomials."""
    _check_degree(n)
    parts = partitions(n)
    if basis == "monomial":
        return [[Fraction(int(i == j)) for j in range(len(parts))] for i in range(len(parts))]
    if basis == "schur":
        return [[Fraction(_kostka(la, mu)) for mu in parts] for la in parts]
    if basis == "homogeneous":
        kos = [[_kostka(nu, la) for la in parts] for nu in parts]
        return [
            [Fraction(sum(kos[v][i] * kos[v][j] for v in range(len(parts)))) for j in range(len(parts))]
            for i in range(len(parts))
        ]
    if basis == "elementary":
        idx = {la: i for i, la in enumerate(parts)}
        kos = [[_kostka(nu, la) for la in parts] for nu in parts]
        return [
            [
                Fraction(sum(kos[idx[conjugate(nu)]][i] * kos[v][j] for v, nu in enumerate(parts)))
                for j in range(len(parts))
            ]
            for i in range(len(parts))
        ]
    if basis == "power":
        return [[Fraction(_p_to_m_entry(la, mu)) for mu in parts] for la in parts]
    raise ValueError(f"no combinatorial transition for basis {basis!r}")


@lru_cache(maxsize=None)
def _from_m_matrix(basis: str, n: int):
    return _mat_inv(_to_m_matrix(basis, n))


@lru_cache(maxsize=None)
def _transition(src: str, dst: str, n: int):
    """Sparse transition ``{la: [(mu, c), ...]}`` from ``src`` to ``dst`` at degree n."""
    parts = partitions(n)
    if src == dst:
        return {la: [(la, Fraction(1))] for la in parts}
    if src == "monomial":
        mat = _from_m_matrix(dst, n)
    elif dst == "monomial":
        mat = _to_m_matrix(src, n)
    else:
        mat = _mat_mul(_to_m_matrix(src, n), _from_m_matrix(dst, n))
    return {la: [(mu, c) for mu, c in zip(parts, mat[i]) if c] for i, la in enumerate(parts)}


# --------------------------------------------------------------------------
# SymF


def _as_scalar(c) -> QtRat:
    if isinstance(c, QtRat):
        return c
    if isinstance(c, (int, Fraction)):
        return QtRat(c)
    raise TypeError(f"cannot use {type(c).__name__} as a coefficient")


class SymF:
    """A symmetric function stored as ``{partition: QtRat}`` in a named basis."""

    __slots__ = ("basis", "terms")

    def __init__(self, basis: str, terms=None):
        self.basis = basis_name(basis)
        clean = {}
        for la, c in (terms or {}).items():
            c = _as_scalar(c)
            if c:
                k = _key(la)
                if k in clean:
                    c = clean[k] + c
                    if not c:
                        del clean[k]
                        continue
                clean[k] = c
        self.terms = clean

    @classmethod
    def _raw(cls, basis: str, terms: dict) -> "SymF":
        obj = object.__new__(cls)
        obj.basis = basis
        obj.terms = terms
        return obj

    # constructors
    @classmethod
    def basis_element(cls, basis: str, la=()) -> "SymF":
        return cls._raw(basis_name(basis), {_key(la): ONE})

    @classmethod
    def zero(cls, basis: str = "power") -> "SymF":
        return cls._raw(basis_name(basis), {})

    @classmethod
    def one(cls, basis: str = "power") -> "SymF":
        return cls._raw(basis_name(basis), {(): ONE})

    # structure
    @property
    def degree(self) -> int:
        """Largest degree among stored components (0 for the zero function)."""
        return max((sum(la) for la in self.terms), default=0)

    def degrees(self) -> list[int]:
        return sorted({sum(la) for la in self.terms})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def component(self, d: int) -> "SymF":
        return SymF._raw(self.basis, {la: c for la, c in self.terms.items() if sum(la) == d})

    def coeff(self, la) -> QtRat:
        return self.terms.get(_key(la), ZERO)

    def __bool__(self):
        return bool(self.terms)

    def map_coeffs(self, fn) -> "SymF":
        out = {}
        for la, c in self.terms.items():
            v = fn(c)
            if v:
                out[la] = v
        return SymF._raw(self.basis, out)

    # linear structure
    def _aligned(self, other: "SymF") -> "SymF":
        return other if other.basis == self.basis else to_basis(other, self.basis)

    def __add__(self, other):
        if isinstance(other, (int, Fraction, QtRat)):
            other = SymF.one(self.basis) * other
        if not isinstance(other, SymF):
            return NotImplemented
        other = self._aligned(other)
        out = dict(self.terms)
        for la, c in other.terms.items():
            v = out.get(la)
            if v is None:
                out[la] = c
            else:
                v = v + c
                if v:
                    out[la] = v
                else:
                    del out[la]
        return SymF._raw(self.basis, out)

    __radd__ = __add__

    def __neg__(self):
        return SymF._raw(self.basis, {la: -c for la, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, QtRat, SymF)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QtRat)):
            c = _as_scalar(other)
            if not c:
                return SymF._raw(self.basis, {})
            return SymF._raw(self.basis, {la: v * c for la, v in self.terms.items()})
        if isinstance(other, SymF):
            return mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, QtRat)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, QtRat)):
            return self * (ONE / _as_scalar(other))
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QtRat)):
            other = SymF.one(self.basis) * other
        if not isinstance(other, SymF):
            return NotImplemented
        if self.basis == other.basis:
            return self.terms == other.terms
        return to_basis(self, "monomial").terms == to_basis(other, "monomial").terms

    def __hash__(self):
        return hash(frozenset(to_basis(self, "monomial").terms.items()))

    def to(self, basis: str) -> "SymF":
        return to_basis(self, basis)

    def swap_qt(self) -> "SymF":
        return self.map_coeffs(lambda c: c.swap())

    def specialize(self, q=None, t=None) -> "SymF":
        return self.map_coeffs(lambda c: c.specialize(q, t))

    # serialization
    def to_json_obj(self) -> dict:
        return {
            "degree": self.degree,
            "basis": self.basis,
            "terms": [
                {"partition": list(la), "coeff": str(self.terms[la])}
                for la in sorted(self.terms, reverse=True)
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: dict) -> "SymF":
        terms = {tuple(t["partition"]): QtRat.parse(t["coeff"]) for t in obj["terms"]}
        return cls(obj["basis"], terms)

    @classmethod
    def from_json(cls, text: str) -> "SymF":
        return cls.from_json_obj(json.loads(text))

    def __str__(self):
        if not self.terms:
            return "0"
        letter = {"monomial": "m", "schur": "s", "homogeneous": "h", "elementary": "e",
                  "power": "p", "macdonald": "H"}[self.basis]
        pieces = []
        for la in sorted(self.terms, key=lambda x: (sum(x), tuple(-y for y in x))):
            c = self.terms[la]
            name = f"{letter}[{','.join(map(str, la))}]"
            pieces.append(name if c == ONE else f"({c})*{name}")
        return " + ".join(pieces)

    def __repr__(self):
        return f"SymF({self.basis!r}, {str(self)!r})"


def _basis_ctor(basis):
    def make(*parts) -> SymF:
        if len(parts) == 1 and not isinstance(parts[0], int):
            parts = tuple(parts[0])
        return SymF.basis_element(basis, parts)

    make.__name__ = basis[0]
    make.__doc__ = f"The {basis} basis element indexed by the given parts."
    return make


m = _basis_ctor("monomial")
s = _basis_ctor("schur")
h = _basis_ctor("homogeneous")
e = _basis_ctor("elementary")
p = _basis_ctor("power")


# --------------------------------------------------------------------------
# basis changes


def to_basis(f: SymF, target: str) -> SymF:
    """Re-express ``f`` in ``target`` (one of :data:`BASES` or a one-letter alias)."""
    target = basis_name(target)
    if f.basis == target:
        return f
    if f.basis == "macdonald" or target == "macdonald":
        from . import macdonald

        if f.basis == "macdonald":
            g = macdonald.mac_to_monomial(f)
            return g if target == "monomial" else to_basis(g, target)
        return macdonald.mac_expand(f)
    by_degree: dict = {}
    for la, c in f.terms.items():
        by_degree.setdefault(sum(la), []).append((la, c))
    out = {}
    for n, items in by_degree.items():
        tr = _transition(f.basis, target, n)
        acc: dict = {}
        for la, c in items:
            for mu, r in tr[la]:
                acc.setdefault(mu, []).append((r, c))
        for mu, pairs in acc.items():
            v = pairs[0][1] * pairs[0][0] if len(pairs) == 1 else lincomb(pairs)
            if v:
                out[mu] = v
    return SymF._raw(target, out)


# --------------------------------------------------------------------------
# algebra in the power-sum basis


def _p_terms(f: SymF) -> dict:
    return to_basis(f, "power").terms


def _merge(a: tuple, b: tuple) -> tuple:
    return tuple(sorted(a + b, reverse=True))


def p_mul_terms(a: dict, b: dict) -> dict:
    """Multiply two power-sum expansions."""
    acc: dict = {}
    for la, c in a.items():
        for mu, d in b.items():
            acc.setdefault(_merge(la, mu), []).append((1, c * d))
    out = {}
    for nu, pairs in acc.items():
        v = pairs[0][1] if len(pairs) == 1 else lincomb(pairs)
        if v:
            out[nu] = v
    return out


def mul(f: SymF, g: SymF) -> SymF:
    """Product ``f * g``, returned in the basis of ``f``."""
    if not f.terms or not g.terms:
        return SymF._raw(f.basis, {})
    if set(f.terms) == {()}:
        return to_basis(g, f.basis) * f.terms[()]
    if set(g.terms) == {()}:
        return f * g.terms[()]
    res = SymF._raw("power", p_mul_terms(_p_terms(f), _p_terms(g)))
    return to_basis(res, f.basis)


def _remove(la: tuple, mu: tuple):
    """``(la minus mu, multiplicity factor)`` for ``p_mu^perp p_la``; None if mu not in la."""
    cl = Counter(la)
    factor = 1
    for k, j in Counter(mu).items():
        mk = cl.get(k, 0)
        if mk < j:
            return None
        factor *= k ** j * factorial(mk) // factorial(mk - j)
        cl[k] = mk - j
    rest = tuple(sorted(cl.elements(), reverse=True))
    return rest, factor


def p_perp_terms(a: dict, b: dict) -> dict:
    """Skew the power-sum expansion ``b`` by the one in ``a``."""
    acc: dict = {}
    for mu, c in a.items():
        for la, d in b.items():
            r = _remove(la, mu)
            if r is None:
                continue
            rest, factor = r
            acc.setdefault(rest, []).append((factor, c * d))
    out = {}
    for nu, pairs in acc.items():
        v = lincomb(pairs)
        if v:
            out[nu] = v
    return out


def perp(f: SymF, g: SymF) -> SymF:
    """The adjoint of multiplication by ``f`` applied to ``g``, in ``g``'s basis."""
    res = SymF._raw("power", p_perp_terms(_p_terms(f), _p_terms(g)))
    return to_basis(res, g.basis)


def hall_inner(f: SymF, g: SymF) -> QtRat:
    """The Hall scalar product (Schur functions orthonormal)."""
    a, b = _p_terms(f), _p_terms(g)
    return lincomb((z_lambda(la), c * b[la]) for la, c in a.items() if la in b)


def omega(f: SymF) -> SymF:
    """The involution ``p_k -> (-1)**(k-1) p_k``, in ``f``'s basis."""
    if f.basis == "schur":
        return SymF._raw("schur", {conjugate(la): c for la, c in f.terms.items()})
    if f.basis in ("homogeneous", "elementary"):
        other = "elementary" if f.basis == "homogeneous" else "homogeneous"
        return to_basis(SymF._raw(other, dict(f.terms)), f.basis)
    a = _p_terms(f)
    res = SymF._raw("power", {la: (c if _sign_eps(la) > 0 else -c) for la, c in a.items()})
    return to_basis(res, f.basis)


def pleth_eval(f: SymF, alphabet) -> QtRat:
    """Evaluate ``f`` after substituting ``p_k -> alphabet(k)``."""
    cache: dict = {}

    def val(k):
        if k not in cache:
            cache[k] = _as_scalar(alphabet(k))
        return cache[k]

    pairs = []
    for la, c in _p_terms(f).items():
        v = c
        for part in la:
            v = v * val(part)
            if not v:
                break
        if v:
            pairs.append((1, v))
    return lincomb(pairs)


def pleth_transform(f: SymF, rule) -> SymF:
    """Apply the algebra map ``p_k -> rule(k) * p_k``; result in the power-sum basis."""
    cache: dict = {}

    def val(k):
        if k not in cache:
            cache[k] = _as_scalar(rule(k))
        return cache[k]

    out = {}
    for la, c in _p_terms(f).items():
        v = c
        for part in la:
            v = v * val(part)
        if v:
            out[la] = v
    return SymF._raw("power", out)


# --------------------------------------------------------------------------
# Jacobi-Trudi and the rectangular h-expansion


def jacobi_trudi(la) -> SymF:
    """``s_la = det(h_{la_i - i + j})`` expanded in the complete homogeneous basis."""
    la = _key(la)
    n = len(la)
    memo: dict = {}

    def det(row: int, used: int) -> dict:
        if row == n:
            return {(): 1}
        key = (row, used)
        if key in memo:
            return memo[key]
        out: dict = {}
        pos = 0
        for col in range(n):
            if used >> col & 1:
                continue
            sign = -1 if pos % 2 else 1
            pos += 1
            a = la[row] - row + col
            if a < 0:
                continue
            for mu, c in det(row + 1, used | (1 << col)).items():
                nu = _key(mu + ((a,) if a else ()))
                out[nu] = out.get(nu, 0) + sign * c
        memo[key] = {k: v for k, v in out.items() if v}
        return memo[key]

    return SymF("homogeneous", det(0, 0))


def allowable_compositions(k: int) -> list:
    """Weak compositions of ``k`` in which each positive part ``a`` is followed by
    exactly ``a - 1`` zeros, with sign ``(-1)**(number of zeros)``.

    These are exactly the concatenations of blocks ``(a, 0, ..., 0)``; the list is
    sorted lexicographically.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = []

    def rec(rest: int, acc: tuple):
        if rest == 0:
            out.append(acc)
            return
        for a in range(1, rest + 1):
            rec(rest - a, acc + (a,) + (0,) * (a - 1))

    rec(k, ())
    out.sort()
    return [(a, -1 if a.count(0) % 2 else 1) for a in out]


def is_allowable(alpha) -> bool:
    alpha = tuple(alpha)
    i = 0
    while i < len(alpha):
        a = alpha[i]
        if a == 0:
            return False
        if alpha[i + 1:i + a] != (0,) * (a - 1):
            return False
        i += a
    return True


def composition_sign(alpha) -> int:
    return -1 if tuple(alpha).count(0) % 2 else 1


def schur_rect_h_expansion(m: int, k: int) -> SymF:
    """The signed sum of ``h_{m - alpha}`` over allowable ``alpha`` of ``k``.

    It agrees with ``s_{(m-1)^k}`` modulo the ideal generated by ``h_j``, ``j > m``.
    """
    if m < 1:
        raise ValueError("m must be positive")
    out: dict = {}
    for alpha, sign in allowable_compositions(k):
        tilde = tuple(m - a for a in alpha)
        if any(x < 0 for x in tilde):
            continue
        la = _key(tilde)
        out[la] = out.get(la, 0) + sign
    return SymF("homogeneous", {la: c for la, c in out.items() if c})


def e_power_terms(n: int) -> dict:
    """``e_n`` in the power-sum basis: ``sum eps_la p_la / z_la``."""
    return {la: QtRat(Fraction(_sign_eps(la), z_lambda(la))) for la in partitions(n)}


def h_power_terms(n: int) -> dict:
    return {la: QtRat(Fraction(1, z_lambda(la))) for la in partitions(n)}


__all__ += ["BASES", "basis_name", "e", "h", "m", "p", "s", "is_allowable", "composition_sign",
            "e_power_terms", "h_power_terms", "p_mul_terms", "p_perp_terms"]
