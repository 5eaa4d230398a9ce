"""Exact arithmetic in the field Q(q, t).

:class:`QtRat` is the workhorse: a reduced fraction of two integer polynomials
in ``q`` and ``t``.  Its canonical form makes structural equality coincide with
field equality:

* numerator and denominator are coprime in Z[q, t] (integer content included),
* the coefficient of the lexicographically smallest monomial of the
  denominator is positive,
* zero is ``0 / 1``.

:class:`QtPoly` is a lighter polynomial type with rational coefficients, used
for q-integers and anywhere a genuine polynomial is wanted.

Text format: terms sorted by ``(deg_q, deg_t)`` ascending, every coefficient
printed explicitly (``1 - 1*t - 1*q + 1*q*t``); fractions are ``num | den``
with the ``| 1`` omitted for polynomials.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd as igcd
from math import lcm

from . import _zpoly as Z
from ._zpoly import MASK, SHIFT

__all__ = [
    "PoleError",
    "QtPoly",
    "QtRat",
    "q_integer",
    "q_int_ratio",
    "specialize",
    "swap_qt",
    "lincomb",
    "Q",
    "T",
    "ONE",
    "ZERO",
]


class PoleError(ZeroDivisionError):
    """Raised when a specialization hits a zero of the denominator."""


# --------------------------------------------------------------------------
# text helpers


def _monomial_text(i: int, j: int) -> str:
    parts = []
    if i:
        parts.append("q" if i == 1 else f"q^{i}")
    if j:
        parts.append("t" if j == 1 else f"t^{j}")
    return "*".join(parts)


def _poly_text(terms: dict) -> str:
    """Render packed-key -> int/Fraction coefficients in the canonical order."""
    if not terms:
        return "0"
    out = []
    for k, e in enumerate(sorted(terms)):
        c = Fraction(terms[e])
        neg = c < 0
        a = -c if neg else c
        cs = str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        m = _monomial_text(e >> SHIFT, e & MASK)
        body = f"{cs}*{m}" if m else cs
        if k == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


_TERM = re.compile(
    r"""\s*([+-]?)\s*
        (?:(\d+)(?:/(\d+))?)?\s*\*?\s*
        ((?:[qt](?:\^\d+)?\s*\*?\s*)*)\s*""",
    re.VERBOSE,
)
_FACTOR = re.compile(r"([qt])(?:\^(\d+))?")


def _parse_poly(text: str) -> dict:
    """Parse a polynomial string into packed-key -> Fraction."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial")
    # split into signed terms at top-level + / - (not those starting the string)
    pieces = re.split(r"(?<=[0-9qt\s])\s*(?=[+-])", s)
    out: dict = {}
    for piece in pieces:
        piece = piece.strip()
        if not piece:
            continue
        m = _TERM.fullmatch(piece)
        if not m or (m.group(2) is None and not m.group(4).strip()):
            raise ValueError(f"cannot parse term {piece!r} in {text!r}")
        sign, num, den, mono = m.groups()
        c = Fraction(int(num) if num else 1, int(den) if den else 1)
        if sign == "-":
            c = -c
        i = j = 0
        for var, exp in _FACTOR.findall(mono):
            k = int(exp) if exp else 1
            if var == "q":
                i += k
            else:
                j += k
        key = Z.mono(i, j)
        v = out.get(key, 0) + c
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return out


def _clear_denominators(terms: dict) -> tuple[dict, int]:
    """Turn packed-key -> Fraction into (integer poly, common multiplier)."""
    d = 1
    for c in terms.values():
        c = Fraction(c)
        if c.denominator != 1:
            d = lcm(d, c.denominator)
    return {e: int(Fraction(c) * d) for e, c in terms.items()}, d


# --------------------------------------------------------------------------
# QtRat


def _normalize_sign(num: dict, den: dict) -> tuple[dict, dict]:
    if Z.lowest_coeff(den) < 0:
        return Z.neg(num), Z.neg(den)
    return num, den


class QtRat:
    """An element of Q(q, t) held in reduced canonical form."""

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, num=0, den=1):
        n = _as_rat(num)
        if isinstance(den, int) and den == 1:
            self._num, self._den = n._num, n._den
        else:
            r = n / _as_rat(den)
            self._num, self._den = r._num, r._den
        self._hash = None

    @classmethod
    def _raw(cls, num: dict, den: dict) -> "QtRat":
        obj = object.__new__(cls)
        obj._num = num
        obj._den = den
        obj._hash = None
        return obj

    @classmethod
    def _make(cls, num: dict, den: dict) -> "QtRat":
        """Reduce an arbitrary integer fraction to canonical form."""
        if not den:
            raise ZeroDivisionError("QtRat with zero denominator")
        if not num:
            return ZERO
        if Z.is_const(den):
            d = den[0]
            g = igcd(Z.content(num), d)
            if d < 0:
                g = -g
            if g != 1:
                num = {e: c // g for e, c in num.items()}
                den = {0: d // g}
            return cls._raw(num, den)
        g = Z.gcd(num, den)
        if not Z.is_const(g) or g.get(0, 1) != 1:
            num = Z.divexact(num, g)
            den = Z.divexact(den, g)
        num, den = _normalize_sign(num, den)
        return cls._raw(num, den)

    @classmethod
    def from_int(cls, n: int) -> "QtRat":
        return cls._raw({0: n} if n else {}, {0: 1})

    @classmethod
    def from_fraction(cls, f) -> "QtRat":
        f = Fraction(f)
        if not f:
            return ZERO
        return cls._raw({0: f.numerator}, {0: f.denominator})

    @classmethod
    def monomial(cls, i: int, j: int, coeff=1) -> "QtRat":
        """``coeff * q**i * t**j``; negative exponents are allowed."""
        f = Fraction(coeff)
        if not f:
            return ZERO
        ni, di = (i, 0) if i >= 0 else (0, -i)
        nj, dj = (j, 0) if j >= 0 else (0, -j)
        return cls._make({Z.mono(ni, nj): f.numerator}, {Z.mono(di, dj): f.denominator})

    @classmethod
    def parse(cls, text: str) -> "QtRat":
        if "|" in text:
            a, b = text.split("|", 1)
            return QtPoly.parse(a).to_rat() / QtPoly.parse(b).to_rat()
        return QtPoly.parse(text).to_rat()

    # -- accessors -----------------------------------------------------------

    @property
    def numerator(self) -> "QtPoly":
        return QtPoly._raw({e: Fraction(c) for e, c in self._num.items()})

    @property
    def denominator(self) -> "QtPoly":
        return QtPoly._raw({e: Fraction(c) for e, c in self._den.items()})

    def is_zero(self) -> bool:
        return not self._num

    def is_polynomial(self) -> bool:
        return Z.is_const(self._den)

    def is_constant(self) -> bool:
        return Z.is_const(self._num) and Z.is_const(self._den)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return Fraction(self._num.get(0, 0), self._den[0])

    def terms(self) -> dict[tuple[int, int], Fraction]:
        """Coefficients ``{(i, j): c}`` of a polynomial element."""
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a polynomial")
        d = self._den[0]
        return {Z.unpack(e): Fraction(c, d) for e, c in self._num.items()}

    def __bool__(self) -> bool:
        return bool(self._num)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._num, self._den
        c, d = other._num, other._den
        if not a:
            return other
        if not c:
            return self
        if b == d:
            if b == Z.ONE:
                s = Z.add(a, c)
                return QtRat._raw(s, Z.ONE) if s else ZERO
            return QtRat._make(Z.add(a, c), b)
        bc, dc = Z.is_const(b), Z.is_const(d)
        if bc and dc:
            x, y = b[0], d[0]
            g = igcd(x, y)
            x1, y1 = x // g, y // g
            return QtRat._make(Z.add(Z.scale(a, y1), Z.scale(c, x1)), {0: x1 * y})
        if bc:
            return QtRat._make(Z.add(Z.mul(a, d), Z.scale(c, b[0])), Z.scale(d, b[0]))
        if dc:
            return QtRat._make(Z.add(Z.scale(a, d[0]), Z.mul(c, b)), Z.scale(b, d[0]))
        g = Z.gcd(b, d)
        if Z.is_const(g):
            return QtRat._make(Z.add(Z.mul(a, d), Z.mul(c, b)), Z.mul(b, d))
        b1 = Z.divexact(b, g)
        d1 = Z.divexact(d, g)
        num = Z.add(Z.mul(a, d1), Z.mul(c, b1))
        if not num:
            return ZERO
        # only factors of g can cancel with the new numerator
        h = Z.gcd(num, g)
        if not (Z.is_const(h) and h.get(0) == 1):
            num = Z.divexact(num, h)
            g = Z.divexact(g, h)
        num, den = _normalize_sign(num, Z.mul(Z.mul(b1, d1), g))
        return QtRat._raw(num, den)

    __radd__ = __add__

    def __neg__(self):
        if not self._num:
            return self
        return QtRat._raw(Z.neg(self._num), self._den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._num, self._den
        c, d = other._num, other._den
        if not a or not c:
            return ZERO
        bc, dc = Z.is_const(b), Z.is_const(d)
        if bc and dc:
            if Z.is_const(a) or Z.is_const(c) or b[0] != 1 or d[0] != 1:
                return QtRat._make(Z.mul(a, c), {0: b[0] * d[0]})
            return QtRat._raw(Z.mul(a, c), Z.ONE)
        g1 = Z.gcd(a, d)
        g2 = Z.gcd(c, b)
        if not (Z.is_const(g1) and g1.get(0) == 1):
            a = Z.divexact(a, g1)
            d = Z.divexact(d, g1)
        if not (Z.is_const(g2) and g2.get(0) == 1):
            c = Z.divexact(c, g2)
            b = Z.divexact(b, g2)
        num, den = _normalize_sign(Z.mul(a, c), Z.mul(b, d))
        return QtRat._raw(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "QtRat":
        if not self._num:
            raise ZeroDivisionError("inverse of zero in Q(q, t)")
        num, den = _normalize_sign(self._den, self._num)
        return QtRat._raw(num, den)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return ONE
        num, den = Z.power(self._num, n), Z.power(self._den, n)
        return QtRat._raw(*_normalize_sign(num, den))

    def divide_exact_poly(self, p: "QtRat") -> "QtRat":
        """Divide by ``p``; cheap when ``p`` is a polynomial dividing the numerator."""
        if p.is_polynomial() and p._den == Z.ONE:
            qn = Z.divexact(self._num, p._num) if self._num else {}
            if qn is not None:
                return QtRat._raw(*_normalize_sign(qn, self._den))
        return self / p

    # -- comparison / hashing -------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, QtRat):
            return self._num == other._num and self._den == other._den
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._num == o._num and self._den == o._den

    def __hash__(self):
        if self._hash is None:
            if Z.is_const(self._num) and self._den == Z.ONE:
                self._hash = hash(self._num.get(0, 0))
            else:
                self._hash = hash((frozenset(self._num.items()), frozenset(self._den.items())))
        return self._hash

    # -- transforms ------------------------------------------------------------

    def swap(self) -> "QtRat":
        """Exchange q and t."""
        num, den = _normalize_sign(Z.swap(self._num), Z.swap(self._den))
        return QtRat._raw(num, den)

    def specialize(self, q=None, t=None) -> "QtRat":
        """Substitute exact rationals for q and/or t (``None`` keeps it)."""
        num = Z.evaluate(self._num, q, t)
        den = Z.evaluate(self._den, q, t)
        if not den:
            raise PoleError(f"denominator of {self} vanishes at q={q}, t={t}")
        n, a = _clear_denominators(num)
        d, b = _clear_denominators(den)
        return QtRat._make(Z.scale(n, b), Z.scale(d, a))

    def __str__(self):
        if self._den == Z.ONE:
            return _poly_text(self._num)
        return f"{_poly_text(self._num)} | {_poly_text(self._den)}"

    def __repr__(self):
        return f"QtRat({str(self)!r})"

    def __reduce__(self):
        return (QtRat.parse, (str(self),))


def _coerce(x):
    if isinstance(x, QtRat):
        return x
    if isinstance(x, int):
        return QtRat.from_int(x)
    if isinstance(x, Fraction):
        return QtRat.from_fraction(x)
    if isinstance(x, QtPoly):
        return x.to_rat()
    return NotImplemented


def _as_rat(x) -> QtRat:
    if isinstance(x, str):
        return QtRat.parse(x)
    r = _coerce(x)
    if r is NotImplemented:
        raise TypeError(f"cannot convert {type(x).__name__} to QtRat")
    return r


ZERO = QtRat._raw({}, Z.ONE)
ONE = QtRat._raw({0: 1}, Z.ONE)
Q = QtRat._raw({Z.mono(1, 0): 1}, Z.ONE)
T = QtRat._raw({Z.mono(0, 1): 1}, Z.ONE)


# --------------------------------------------------------------------------
# QtPoly


class QtPoly:
    """A polynomial in q and t with rational coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict | None = None):
        self._terms = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError("QtPoly exponents must be nonnegative")
            c = Fraction(c)
            if c:
                self._terms[Z.mono(i, j)] = c

    @classmethod
    def _raw(cls, packed: dict) -> "QtPoly":
        obj = object.__new__(cls)
        obj._terms = packed
        return obj

    @classmethod
    def parse(cls, text: str) -> "QtPoly":
        return cls._raw(_parse_poly(text))

    @property
    def terms(self) -> dict[tuple[int, int], Fraction]:
        return {Z.unpack(e): c for e, c in self._terms.items()}

    def to_rat(self) -> QtRat:
        n, d = _clear_denominators(self._terms)
        return QtRat._make(n, {0: d})

    def _binop(self, other, sign: int):
        if isinstance(other, (int, Fraction)):
            other = QtPoly({(0, 0): other})
        if not isinstance(other, QtPoly):
            return NotImplemented
        r = dict(self._terms)
        for e, c in other._terms.items():
            v = r.get(e, 0) + sign * c
            if v:
                r[e] = v
            else:
                r.pop(e, None)
        return QtPoly._raw(r)

    def __add__(self, other):
        return self._binop(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, -1)

    def __neg__(self):
        return QtPoly._raw({e: -c for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QtPoly._raw({e: c * other for e, c in self._terms.items() if c * other})
        if not isinstance(other, QtPoly):
            return NotImplemented
        r: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                r[e1 + e2] = r.get(e1 + e2, 0) + c1 * c2
        return QtPoly._raw({e: c for e, c in r.items() if c})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, QtPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction, QtRat)):
            return self.to_rat() == other
        return NotImplemented

    def __hash__(self):
        return hash(self.to_rat())

    def __str__(self):
        return _poly_text(self._terms)

    def __repr__(self):
        return f"QtPoly({str(self)!r})"


# --------------------------------------------------------------------------
# module-level helpers


def q_integer(n: int) -> QtPoly:
    """``[n]_q = 1 + q + ... + q**(n-1)``; zero for ``n == 0``."""
    if n < 0:
        raise ValueError("q_integer needs n >= 0")
    return QtPoly._raw({Z.mono(i, 0): Fraction(1) for i in range(n)})


def q_int_ratio(m: int, d: int) -> QtRat:
    """``[m]_q / [d]_q``, a polynomial in q whenever ``d`` divides ``m``."""
    if d <= 0 or m < 0:
        raise ValueError("q_int_ratio needs m >= 0 and d >= 1")
    if m % d == 0:
        return QtRat._raw({Z.mono(i, 0): 1 for i in range(0, m, d)} or {}, Z.ONE) if m else ZERO
    return q_integer(m).to_rat() / q_integer(d).to_rat()


def specialize(x: QtRat, q0=None, t0=None) -> QtRat:
    """Substitute q = q0 (and t = t0 unless it is ``None``)."""
    return _as_rat(x).specialize(q0, t0)


def swap_qt(x: QtRat) -> QtRat:
    return _as_rat(x).swap()


def lincomb(pairs) -> QtRat:
    """Return ``sum(s * x for s, x in pairs)``.

    ``s`` may be an int, a Fraction or a QtRat; ``x`` is a QtRat.  When ``s``
    is a polynomial (constant denominator), products are never reduced
    individually: terms sharing a denominator are accumulated as integer
    polynomials and reduced once, which keeps long sums cheap.
    """
    items = []
    scale_den = 1
    for s, x in pairs:
        x = _as_rat(x)
        if not x._num:
            continue
        if isinstance(s, QtRat):
            if not s._num:
                continue
            if not Z.is_const(s._den):
                items.append((Z.ONE, 1, s * x))
                continue
            num, d = s._num, s._den[0]
        else:
            s = Fraction(s)
            if not s:
                continue
            num, d = {0: s.numerator}, s.denominator
        items.append((num, d, x))
        if d != 1:
            scale_den = lcm(scale_den, d)
    if not items:
        return ZERO
    groups: dict = {}
    const_dens: dict = {}
    for num_s, d, x in items:
        k = scale_den // d
        contrib = Z.mul(num_s, x._num)
        if k != 1:
            contrib = Z.scale(contrib, k)
        den = x._den
        if Z.is_const(den):
            dd = den[0]
            acc = const_dens.get(dd)
            const_dens[dd] = contrib if acc is None else Z.add(acc, contrib)
            continue
        key = tuple(sorted(den.items()))
        entry = groups.get(key)
        if entry is None:
            groups[key] = [den, contrib]
        else:
            entry[1] = Z.add(entry[1], contrib)
    total = ZERO
    if const_dens:
        common = 1
        for dd in const_dens:
            common = lcm(common, dd)
        acc: dict = {}
        for dd, num in const_dens.items():
            acc = Z.add(acc, Z.scale(num, common // dd))
        total = QtRat._make(acc, {0: common}) if acc else ZERO
    for den, num in groups.values():
        if num:
            total = total + QtRat._make(num, den)
    if scale_den != 1:
        total = total * QtRat._raw({0: 1}, {0: scale_den})
    return total
