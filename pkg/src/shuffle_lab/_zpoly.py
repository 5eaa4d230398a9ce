"""Sparse bivariate polynomials over the integers.

A polynomial is a plain ``dict`` mapping a packed exponent ``(i << SHIFT) | j``
(standing for ``q**i * t**j``) to a nonzero ``int``.  Packed keys order exactly
like the pairs ``(i, j)`` in lexicographic order, add like monomials multiply,
and hash faster than tuples.  Every function here treats its inputs as
read-only and returns fresh dicts.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd as igcd
from math import isqrt

SHIFT = 24
MASK = (1 << SHIFT) - 1

ONE = {0: 1}


def mono(i: int, j: int) -> int:
    return (i << SHIFT) | j


def unpack(e: int) -> tuple[int, int]:
    return e >> SHIFT, e & MASK


def const(c: int) -> dict:
    return {0: c} if c else {}


def is_const(a: dict) -> bool:
    return not a or (len(a) == 1 and 0 in a)


def add(a: dict, b: dict) -> dict:
    if len(a) < len(b):
        a, b = b, a
    r = dict(a)
    for e, c in b.items():
        s = r.get(e, 0) + c
        if s:
            r[e] = s
        else:
            del r[e]
    return r


def sub(a: dict, b: dict) -> dict:
    r = dict(a)
    for e, c in b.items():
        s = r.get(e, 0) - c
        if s:
            r[e] = s
        else:
            del r[e]
    return r


def neg(a: dict) -> dict:
    return {e: -c for e, c in a.items()}


def scale(a: dict, c: int) -> dict:
    if not c:
        return {}
    if c == 1:
        return a
    return {e: v * c for e, v in a.items()}


def shift(a: dict, e0: int) -> dict:
    """Multiply by the monomial with packed exponent ``e0``."""
    return {e + e0: c for e, c in a.items()}


def mul(a: dict, b: dict) -> dict:
    if len(a) > len(b):
        a, b = b, a
    if len(a) == 1:
        (e1, c1), = a.items()
        if e1 == 0:
            return scale(b, c1)
        return {e1 + e2: c1 * c2 for e2, c2 in b.items()}
    r: dict = {}
    get = r.get
    bitems = list(b.items())
    for e1, c1 in a.items():
        for e2, c2 in bitems:
            e = e1 + e2
            r[e] = get(e, 0) + c1 * c2
    return {e: c for e, c in r.items() if c}


def power(a: dict, n: int) -> dict:
    result = ONE
    base = a
    while n:
        if n & 1:
            result = mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return result


def content(a: dict) -> int:
    return igcd(*a.values()) if a else 0


def divexact(a: dict, b: dict) -> dict | None:
    """Return ``a / b`` if ``b`` divides ``a`` in Z[q, t], else ``None``."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return {}
    if len(b) == 1:
        (eb, cb), = b.items()
        jb = eb & MASK
        out = {}
        for e, c in a.items():
            if e < eb or (e & MASK) < jb or c % cb:
                return None
            out[e - eb] = c // cb
        return out
    eb = max(b)
    cb = b[eb]
    jb = eb & MASK
    bitems = list(b.items())
    r = dict(a)
    heap = [-e for e in r]
    heapq.heapify(heap)
    quot = {}
    while r:
        e = -heapq.heappop(heap)
        c = r.get(e)
        if c is None:
            continue
        if e < eb or (e & MASK) < jb or c % cb:
            return None
        m = c // cb
        d = e - eb
        quot[d] = m
        for e2, c2 in bitems:
            k = e2 + d
            v = r.get(k)
            if v is None:
                r[k] = -m * c2
                heapq.heappush(heap, -k)
            else:
                v -= m * c2
                if v:
                    r[k] = v
                else:
                    del r[k]
    return quot


def deg_q(a: dict) -> int:
    return max(e >> SHIFT for e in a)


def deg_t(a: dict) -> int:
    return max(e & MASK for e in a)


def swap(a: dict) -> dict:
    return {((e & MASK) << SHIFT) | (e >> SHIFT): c for e, c in a.items()}


def lowest_coeff(a: dict) -> int:
    """Coefficient of the lexicographically smallest monomial."""
    return a[min(a)]


def evaluate(a: dict, q=None, t=None) -> dict:
    """Substitute exact rationals for q and/or t; ``None`` keeps the variable.

    The result maps packed exponents to ``Fraction`` values.
    """
    out: dict = {}
    for e, c in a.items():
        i, j = e >> SHIFT, e & MASK
        v = Fraction(c)
        if q is not None:
            v *= Fraction(q) ** i
            i = 0
        if t is not None:
            v *= Fraction(t) ** j
            j = 0
        k = (i << SHIFT) | j
        s = out.get(k, 0) + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


# --------------------------------------------------------------------------
# gcd


def _monomial_content(a: dict) -> int:
    return mono(min(e >> SHIFT for e in a), min(e & MASK for e in a))


def _primitive(a: dict) -> dict:
    """Primitive part with the leading (largest) coefficient positive."""
    c = content(a)
    if a[max(a)] < 0:
        c = -c
    if c == 1:
        return a
    return {e: v // c for e, v in a.items()}


def _kron_eval(a: dict, stride: int, xi: int) -> int:
    items = sorted((((e >> SHIFT) * stride + (e & MASK)), c) for e, c in a.items())
    acc = 0
    prev = items[-1][0]
    for p, c in reversed(items):
        if prev != p:
            acc *= xi ** (prev - p)
        acc += c
        prev = p
    if prev:
        acc *= xi ** prev
    return acc


def _kron_recon(h: int, stride: int, xi: int) -> dict:
    out = {}
    p = 0
    half = xi // 2
    while h:
        d = h % xi
        if d > half:
            d -= xi
        if d:
            out[mono(p // stride, p % stride)] = d
        h = (h - d) // xi
        p += 1
    return out


def _heu_gcd(f: dict, g: dict) -> dict | None:
    """Heuristic gcd of primitive polynomials by Kronecker substitution.

    Every candidate is confirmed by exact division, so a non-None answer is
    the true gcd up to sign.
    """
    stride = max(deg_t(f), deg_t(g)) + 1
    fn = max(abs(c) for c in f.values())
    gn = max(abs(c) for c in g.values())
    b = 2 * min(fn, gn) + 29
    xi = max(min(b, 99 * isqrt(b)), 2 * min(fn // abs(f[max(f)]), gn // abs(g[max(g)])) + 2)
    for _ in range(6):
        fv = _kron_eval(f, stride, xi)
        gv = _kron_eval(g, stride, xi)
        if fv and gv:
            h = igcd(fv, gv)
            cand = _kron_recon(h, stride, xi)
            if cand:
                cand = _primitive(cand)
                if divexact(f, cand) is not None and divexact(g, cand) is not None:
                    return cand
            cf = _kron_recon(fv // h, stride, xi)
            if cf:
                cand = divexact(f, cf)
                if cand and divexact(g, cand) is not None:
                    return _primitive(cand)
        xi = 73794 * xi * isqrt(isqrt(xi)) // 27011
    return None


# Recursive dense representation for the exact fallback: a polynomial in q
# whose coefficients are dense integer lists in t (low degree first).


def _u_trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _u_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    r = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                r[i + j] += x * y
    return _u_trim(r)


def _u_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    r = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _u_trim(r)


def _u_scale(a: list, c: int) -> list:
    return _u_trim([x * c for x in a])


def _u_divexact(a: list, b: list) -> list | None:
    if not a:
        return []
    if len(b) > len(a):
        return None
    a = list(a)
    lb = b[-1]
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = a[k + len(b) - 1]
        if c % lb:
            return None
        m = c // lb
        q[k] = m
        if m:
            for j, y in enumerate(b):
                a[k + j] -= m * y
    if any(a):
        return None
    return _u_trim(q)


def _u_content(a: list) -> int:
    return igcd(*a) if a else 0


def _u_prim(a: list) -> list:
    c = _u_content(a)
    if a and a[-1] < 0:
        c = -c
    return [x // c for x in a] if c not in (0, 1) else list(a)


def _u_prem(a: list, b: list) -> list:
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - len(b) + 1
    while r and len(r) - 1 >= db:
        lr = r[-1]
        s = len(r) - 1 - db
        r = [x * lb for x in r]
        for j, y in enumerate(b):
            r[s + j] -= lr * y
        _u_trim(r)
        e -= 1
    return _u_scale(r, lb ** e) if e > 0 else r


def _u_gcd(a: list, b: list) -> list:
    if not a:
        return _u_prim(b) if b else []
    if not b:
        return _u_prim(a)
    c = igcd(_u_content(a), _u_content(b))
    a, b = _u_prim(a), _u_prim(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _u_prem(a, b)
        a, b = b, (_u_prim(r) if r else [])
    return _u_scale(_u_prim(a), c)


def _to_rec(a: dict) -> list:
    dq = deg_q(a)
    dt = deg_t(a)
    rows = [[0] * (dt + 1) for _ in range(dq + 1)]
    for e, c in a.items():
        rows[e >> SHIFT][e & MASK] = c
    return [_u_trim(r) for r in rows]


def _from_rec(rows: list) -> dict:
    out = {}
    for i, row in enumerate(rows):
        for j, c in enumerate(row):
            if c:
                out[mono(i, j)] = c
    return out


def _rec_trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _rec_content(a: list) -> list:
    g: list = []
    for coeff in a:
        if coeff:
            g = _u_gcd(g, coeff)
            if len(g) == 1:
                break
    return g


def _rec_prim(a: list) -> list:
    c = _rec_content(a)
    if c == [1]:
        return a
    return [(_u_divexact(x, c) if x else []) for x in a]


def _rec_prem(a: list, b: list) -> list:
    r = [list(x) for x in a]
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - len(b) + 1
    while r and len(r) - 1 >= db:
        lr = r[-1]
        s = len(r) - 1 - db
        r = [_u_mul(x, lb) for x in r]
        for j, y in enumerate(b):
            r[s + j] = _u_sub(r[s + j], _u_mul(lr, y))
        _rec_trim(r)
        e -= 1
    if e > 0:
        f = [1]
        for _ in range(e):
            f = _u_mul(f, lb)
        r = [_u_mul(x, f) for x in r]
    return r


def prs_gcd(f: dict, g: dict) -> dict:
    """Exact gcd via primitive remainder sequences, recursively in q then t."""
    a, b = _to_rec(f), _to_rec(g)
    c = _u_gcd(_rec_content(a), _rec_content(b))
    a, b = _rec_prim(a), _rec_prim(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _rec_prem(a, b)
        a, b = b, (_rec_prim(r) if r else [])
    res = _from_rec([_u_mul(x, c) for x in a])
    return _primitive(res) if len(res) > 0 else res


def gcd(a: dict, b: dict) -> dict:
    """Greatest common divisor in Z[q, t], normalized to positive content."""
    if not a:
        return _primitive(b) if b else {}
    if not b:
        return _primitive(a)
    ma, mb = _monomial_content(a), _monomial_content(b)
    common = mono(min(ma >> SHIFT, mb >> SHIFT), min(ma & MASK, mb & MASK))
    if ma:
        a = shift(a, -ma)
    if mb:
        b = shift(b, -mb)
    ca, cb = content(a), content(b)
    c = igcd(ca, cb)
    if len(a) == 1 or len(b) == 1:
        g = {0: 1}
    else:
        a = {e: v // ca for e, v in a.items()} if ca != 1 else a
        b = {e: v // cb for e, v in b.items()} if cb != 1 else b
        if a == b or a == neg(b):
            g = _primitive(a)
        else:
            g = _heu_gcd(a, b)
            if g is None:
                g = prs_gcd(a, b)
    if c != 1:
        g = scale(g, c)
    if common:
        g = shift(g, common)
    return g
