"""Executable checks: algebraic side versus combinatorial side, compared exactly.

Each check returns a :class:`CheckReport`.  Symmetric functions are compared in
the monomial basis; on a mismatch the first differing coefficient (smallest
degree, then reverse-lexicographic partition) is recorded.  Exhaustive
combinatorial checks report the number of cases examined on both sides and the
first failing case.

A check has status ``"theorem"`` (a mismatch is a defect) or ``"conjecture"``
(a mismatch is a finding).
"""

from __future__ import annotations

import hashlib
import json
import time
from collections import Counter
from contextlib import contextmanager
from dataclasses import dataclass
from itertools import product
from math import gcd

from . import ehall
from . import macdonald as mac
from . import paths as P
from . import symfunc as sf
from .qtring import q_int_ratio
from .symfunc import SymF

__all__ = [
    "CHECKS",
    "CheckReport",
    "check_conjectures",
    "check_lemma_cdinv",
    "check_macdonald",
    "check_main",
    "check_phi",
    "check_psi",
    "check_q1_refinement",
    "check_rational",
    "check_rectangular",
    "check_schur_expansion",
    "check_skewing",
    "run_check",
    "suite_tasks",
]


@dataclass
class CheckReport:
    id: str
    params: dict
    lhs: object
    rhs: object
    equal: bool
    status: str = "theorem"
    counterexample: dict | None = None
    millis: int = 0

    @property
    def failed_theorem(self) -> bool:
        return self.status == "theorem" and not self.equal

    def to_json_obj(self, timing: bool = True) -> dict:
        obj = {
            "id": self.id,
            "params": self.params,
            "equal": self.equal,
            "status": self.status,
            "lhs_hash": _digest(self.lhs),
            "rhs_hash": _digest(self.rhs),
        }
        if self.counterexample is not None:
            obj["counterexample"] = self.counterexample
        if timing:
            obj["millis"] = self.millis
        return obj

    def to_text(self) -> str:
        verdict = "equal" if self.equal else "DIFFERENT"
        args = ", ".join(f"{k}={v}" for k, v in self.params.items())
        line = f"[{self.status}] {self.id}({args}): {verdict} ({self.millis} ms)"
        if self.counterexample is not None:
            line += f"\n    counterexample: {json.dumps(self.counterexample)}"
        return line


def _canonical(x) -> str:
    if isinstance(x, SymF):
        return sf.to_basis(x, "monomial").to_json()
    return json.dumps(x, sort_keys=True, default=str)


def _digest(x) -> str:
    return hashlib.sha256(_canonical(x).encode()).hexdigest()


def _first_difference(lhs: SymF, rhs: SymF) -> dict | None:
    a = sf.to_basis(lhs, "monomial").terms
    b = sf.to_basis(rhs, "monomial").terms
    keys = sorted(set(a) | set(b), key=lambda la: (sum(la), tuple(-x for x in la)))
    for la in keys:
        ca, cb = a.get(la), b.get(la)
        if ca != cb:
            return {"degree": sum(la), "partition": list(la),
                    "lhs": str(ca) if ca is not None else "0",
                    "rhs": str(cb) if cb is not None else "0"}
    return None


@contextmanager
def _room(degree: int):
    """Raise the degree bound to ``degree`` for the duration (never lowers it)."""
    with sf.degree_bound(max(sf.get_degree_bound(), degree)):
        yield


def _compare(cid: str, params: dict, lhs_fn, rhs_fn, status: str, degree: int) -> CheckReport:
    start = time.perf_counter()
    with _room(degree):
        lhs = sf.to_basis(lhs_fn(), "monomial")
        rhs = sf.to_basis(rhs_fn(), "monomial")
    diff = _first_difference(lhs, rhs)
    millis = int((time.perf_counter() - start) * 1000)
    return CheckReport(cid, params, lhs, rhs, diff is None, status, diff, millis)


def _rect_schur(m: int, k: int) -> SymF:
    """``s_{(m-1)^k}`` via Jacobi-Trudi (``1`` when the rectangle is empty)."""
    return sf.jacobi_trudi((m - 1,) * k if m > 1 else ())


# --------------------------------------------------------------------------
# shuffle theorems


def check_main(m: int, n: int, k: int) -> CheckReport:
    """Skewed ``e_{m, n+km}`` against decorated Dyck paths of size ``(m+k) x (n+k)``."""
    if m < 1 or n < 0 or k < 0:
        raise ValueError("need m >= 1, n >= 0, k >= 0")
    return _compare(
        "main", {"m": m, "n": n, "k": k},
        lambda: sf.perp(_rect_schur(m, k), ehall.e_mn(m, n + k * m)),
        lambda: P.gen_fun(P.lrd(m, n, k)),
        "theorem", n + k * m)


def check_rational(m: int, n: int) -> CheckReport:
    """``e_{m,n}`` against labeled rectangular Dyck paths."""
    if m < 1 or n < 0:
        raise ValueError("need m >= 1, n >= 0")
    return _compare("rational", {"m": m, "n": n},
                    lambda: ehall.e_mn(m, n), lambda: P.gen_fun(P.lrd(m, n)),
                    "theorem", n)


def check_rectangular(m: int, n: int, k: int) -> CheckReport:
    """Skewed ``[m]_q/[d]_q p_{m, n+km}`` against all decorated rectangular paths.

    Theorem status for ``gcd(m, n) = 1``; conjecture status otherwise.
    """
    if m < 1 or n < 0 or k < 0:
        raise ValueError("need m >= 1, n >= 0, k >= 0")
    d = gcd(m, n)
    status = "theorem" if d == 1 else "conjecture"
    return _compare(
        "rectangular", {"m": m, "n": n, "k": k},
        lambda: sf.perp(_rect_schur(m, k), ehall.p_mn(m, n + k * m) * q_int_ratio(m, d)),
        lambda: P.gen_fun(P.lrp(m, n, k)),
        status, n + k * m)


# --------------------------------------------------------------------------
# exhaustive combinatorial checks


def _tally(cid: str, params: dict, cases, status: str = "theorem") -> CheckReport:
    """Run ``cases`` (an iterable of ``(ok, description)``) and summarize."""
    start = time.perf_counter()
    total = passed = 0
    first = None
    for ok, desc in cases:
        total += 1
        if ok:
            passed += 1
        elif first is None:
            first = desc() if callable(desc) else desc
    millis = int((time.perf_counter() - start) * 1000)
    return CheckReport(cid, params, total, passed, total == passed, status, first, millis)


def check_lemma_cdinv(max_w: int, max_h: int, max_k: int) -> CheckReport:
    """Both definitions of the dinv correction agree on every decorated path."""
    def cases():
        for W in range(1, max_w + 1):
            for H in range(0, max_h + 1):
                for k in range(0, max_k + 1):
                    for p in P.shapes(W, H, k):
                        a, b = P.cdinv_D(p), P.cdinv_C(p)
                        yield a == b, (lambda p=p, a=a, b=b:
                                       {"path": p.to_text(), "cdinv_D": a, "cdinv_C": b})
    return _tally("lemma_cdinv", {"max_w": max_w, "max_h": max_h, "max_k": max_k}, cases())


def _content(word, k):
    c = Counter(word)
    return tuple(c.get(i, 0) for i in range(1, k + 1))


def check_phi(max_k: int) -> CheckReport:
    """phi is an involution on words with allowable content, reverses the sign off
    its unique fixed point ``1 2 ... k`` and preserves tied inversions."""
    def cases():
        for k in range(1, max_k + 1):
            fixed = []
            for w in product(range(1, k + 1), repeat=k):
                alpha = _content(w, k)
                if not sf.is_allowable(alpha):
                    continue
                v = P.phi_word(w)
                ok = P.phi_word(v) == w
                if v == w:
                    fixed.append(w)
                else:
                    ok = ok and sf.composition_sign(_content(v, k)) == -sf.composition_sign(alpha)
                ok = ok and all((w[i] >= w[j]) == (v[i] >= v[j])
                                for i in range(k) for j in range(i + 1, k))
                yield ok, {"word": list(w), "image": list(v)}
            yield fixed == [tuple(range(1, k + 1))], {"k": k, "fixed_points": fixed}
    return _tally("phi", {"max_k": max_k}, cases())


def check_psi(max_m: int, max_n: int, max_k: int) -> CheckReport:
    """psi on both sides: round trips, preserved area/shift/vertical distances,
    the tdinv decomposition, phi-invariance of falldinv, equal cardinalities, and
    ``dinv(pi) = dinv(psi^{-1}(pi, fixed labeling))``.  Small labels are bounded
    by the height of the decorated path."""
    def cases():
        for m in range(1, max_m + 1):
            for n in range(0, max_n + 1):
                for k in range(0, max_k + 1):
                    W, H = m + k, n + k
                    forward = Counter()
                    for p in P.enumerate_paths(W, H, k, label_alphabet=H):
                        prof = P.area_profile(p)
                        for f in P.fall_labelings(p):
                            forward[f.content()] += 1
                            pt = P.psi_inverse(p, f)
                            prof_t = P.area_profile(pt)
                            ok = P.psi(pt, k) == (p, f)
                            ok = ok and (prof_t.area, prof_t.shift) == (prof.area, prof.shift)
                            ok = ok and all(pt.v(i) == p.v(j) for i, j in
                                            zip(pt.horizontal_steps, p.horizontal_steps))
                            fd = P.falldinv(p, f)
                            ok = ok and P.tdinv(pt) == P.tdinv(p) + fd
                            g = P.phi(p, f)
                            ok = ok and P.phi(p, g) == f and P.falldinv(p, g) == fd
                            yield ok, (lambda p=p, f=f: {"path": p.to_text(), "fall_labeling": str(f)})
                        if k:
                            fp = P.fixed_point_labeling(p)
                            a, b = P.dinv(p), P.dinv(P.psi_inverse(p, fp))
                            yield a == b, {"path": p.to_text(), "dinv": a, "dinv_preimage": b}
                    backward = Counter()
                    for alpha, _ in sf.allowable_compositions(k):
                        tilde = tuple(m - a for a in alpha)
                        if min(tilde, default=0) < 0:
                            continue
                        for pt in P.enumerate_paths(m, n + k * m, 0, label_alphabet=H,
                                                    big_content=tilde):
                            p, f = P.psi(pt, k)
                            backward[f.content()] += 1
                            ok = f.content() == tuple(alpha) and P.psi_inverse(p, f) == pt
                            yield ok, (lambda pt=pt: {"big_label_path": pt.to_text()})
                    yield forward == backward, {"m": m, "n": n, "k": k,
                                                "forward": len(forward), "backward": len(backward)}
    return _tally("psi", {"max_m": max_m, "max_n": max_n, "max_k": max_k}, cases())


def check_schur_expansion(max_m: int, max_k: int) -> CheckReport:
    """The signed allowable-composition sum agrees with Jacobi-Trudi modulo ``h_j``, ``j > m``."""
    def reduce_mod(f: SymF, m: int) -> dict:
        terms = sf.to_basis(f, "homogeneous").terms
        return {la: c for la, c in terms.items() if not la or la[0] <= m}

    def cases():
        for m in range(1, max_m + 1):
            for k in range(0, max_k + 1):
                a = reduce_mod(sf.schur_rect_h_expansion(m, k), m)
                b = reduce_mod(_rect_schur(m, k), m)
                yield a == b, {"m": m, "k": k}
    return _tally("schur_expansion", {"max_m": max_m, "max_k": max_k}, cases())


def check_skewing(m: int, n: int, alpha) -> CheckReport:
    """``h_alpha^perp`` of the path generating function equals the big-label one."""
    alpha = tuple(alpha)

    def lhs():
        h_alpha = sf.SymF("homogeneous", {tuple(sorted((a for a in alpha if a), reverse=True)): 1})
        return sf.perp(h_alpha, P.gen_fun(P.lrp(m, n)))

    return _compare("skewing", {"m": m, "n": n, "alpha": list(alpha)}, lhs,
                    lambda: P.gen_fun(P.PathSet(m, n, 0, False, alpha)), "theorem", n)


def check_q1_refinement(m: int, n: int, k: int) -> CheckReport:
    """At ``q = 1`` the fibers over the fall-composition add up to the whole sum."""
    def fibers():
        betas = sorted({P.beta(p) for p in P.lrd(m, n, k).shapes()})
        total = SymF.zero("monomial")
        for b in betas:
            total = total + P.gen_fun(P.lrd(m, n, k), shape_filter=lambda p, b=b: P.beta(p) == b)
        return total.specialize(q=1)

    return _compare("q1_refinement", {"m": m, "n": n, "k": k},
                    lambda: P.gen_fun(P.lrd(m, n, k)).specialize(q=1), fibers,
                    "theorem", n + k)


def check_macdonald(n: int, properties=("swap", "kostka", "nabla")) -> CheckReport:
    """For ``|mu| = n``: q/t swap is conjugation, modified Kostka coefficients are
    polynomials with nonnegative integer coefficients, and ``nabla = Delta_{e_n}``.

    ``properties`` selects a subset of ``swap``, ``kostka`` and ``nabla``.
    """
    properties = tuple(properties)
    unknown = set(properties) - {"swap", "kostka", "nabla"}
    if unknown:
        raise ValueError(f"unknown Macdonald properties {sorted(unknown)}")

    def cases():
        for mu in sf.partitions(n):
            H = mac.htilde(mu)
            if "swap" in properties:
                yield H.swap_qt() == mac.htilde(sf.conjugate(mu)), {"mu": list(mu), "property": "swap"}
            if "kostka" in properties:
                for la in sf.partitions(n):
                    c = mac.kostka(la, mu)
                    ok = c.is_polynomial() and all(
                        v.denominator == 1 and v >= 0 for v in c.terms().values())
                    yield ok, {"mu": list(mu), "la": list(la), "property": "kostka"}
        if "nabla" in properties:
            for la in sf.partitions(n):
                f = sf.s(*la)
                yield mac.nabla(f) == mac.delta(sf.e(n), f), {"la": list(la), "property": "nabla"}
    return _tally("macdonald", {"n": n, "properties": list(properties)}, cases())


# --------------------------------------------------------------------------
# conjectures


def check_conjectures(selector: str, params: dict) -> CheckReport:
    """``fall_square`` (n, k), ``schroder`` (m, n, k, d) or ``theta_identity`` (n, k)."""
    if selector == "fall_square":
        n, k = params["n"], params["k"]
        if n < 1:
            raise ValueError("the fall square conjecture needs n >= 1")
        return _compare(
            "fall_square", {"n": n, "k": k},
            lambda: mac.theta(sf.e(k), mac.nabla(sf.omega(sf.p(n)))),
            lambda: P.gen_fun(P.lrp(n, n, k)), "conjecture", n + k)
    if selector == "schroder":
        m, n, k, d = params["m"], params["n"], params["k"], params["d"]
        if m < 1 or n < 1 or not 0 <= d <= min(m + k, n + k):
            raise ValueError("the Schroder identity needs m, n >= 1 and 0 <= d <= min(m+k, n+k)")

        def lhs():
            g = sf.mul(sf.mul(_rect_schur(m, k), sf.h(d)), sf.e(n + k - d))
            return SymF.one() * sf.hall_inner(ehall.e_mn(m, n + k * m), g)

        def rhs():
            g = sf.mul(sf.h(d), sf.e(m + k - d))
            return SymF.one() * sf.hall_inner(mac.theta(sf.e(k), ehall.e_mn(n, m)), g)

        return _compare("schroder", {"m": m, "n": n, "k": k, "d": d}, lhs, rhs, "conjecture",
                        max(n + k * m, m + k))
    if selector == "theta_identity":
        n, k = params["n"], params["k"]
        if n < 1:
            raise ValueError("the identity needs n >= 1")
        return _compare(
            "theta_identity", {"n": n, "k": k},
            lambda: mac.theta(sf.e(k), mac.nabla(sf.omega(sf.p(n)))),
            lambda: sf.perp(_rect_schur(n, k), ehall.p_mn(n, n * (k + 1))),
            "conjecture", n * (k + 1))
    raise KeyError(f"unknown conjecture {selector!r}")


# --------------------------------------------------------------------------
# suites


CHECKS = {
    "main": lambda p: check_main(p["m"], p["n"], p["k"]),
    "rational": lambda p: check_rational(p["m"], p["n"]),
    "rectangular": lambda p: check_rectangular(p["m"], p["n"], p["k"]),
    "lemma_cdinv": lambda p: check_lemma_cdinv(p["max_w"], p["max_h"], p["max_k"]),
    "phi": lambda p: check_phi(p["max_k"]),
    "psi": lambda p: check_psi(p["max_m"], p["max_n"], p["max_k"]),
    "schur_expansion": lambda p: check_schur_expansion(p["max_m"], p["max_k"]),
    "skewing": lambda p: check_skewing(p["m"], p["n"], p["alpha"]),
    "q1_refinement": lambda p: check_q1_refinement(p["m"], p["n"], p["k"]),
    "macdonald": lambda p: check_macdonald(p["n"], p.get("properties", ("swap", "kostka", "nabla"))),
    "fall_square": lambda p: check_conjectures("fall_square", p),
    "schroder": lambda p: check_conjectures("schroder", p),
    "theta_identity": lambda p: check_conjectures("theta_identity", p),
}

SUITES = ("main", "rational", "rectangular", "lemmas", "conjectures")


def run_check(cid: str, params: dict) -> CheckReport:
    if cid not in CHECKS:
        raise KeyError(f"unknown check {cid!r}")
    return CHECKS[cid](params)


def suite_tasks(suite: str, max_m: int, max_n: int, max_k: int) -> list:
    """The ``(check id, params)`` grid of a suite.

    ``lemmas`` runs the cdinv lemma on the full bounds; the heavier exhaustive
    checks (psi, skewing, fall-composition fibers) are capped at the sizes that
    finish at desk scale (m <= 3, n <= 2 or 3).
    """
    bound = sf.get_degree_bound()
    tasks: list = []
    if suite == "main":
        for m in range(1, max_m + 1):
            for n in range(0, max_n + 1):
                for k in range(0, max_k + 1):
                    if n + k * m <= bound:
                        tasks.append(("main", {"m": m, "n": n, "k": k}))
    elif suite == "rational":
        for m in range(1, max_m + 1):
            for n in range(1, max_n + 1):
                tasks.append(("rational", {"m": m, "n": n}))
    elif suite == "rectangular":
        for m in range(1, max_m + 1):
            for n in range(0, max_n + 1):
                for k in range(0, max_k + 1):
                    if n + k * m <= bound:
                        tasks.append(("rectangular", {"m": m, "n": n, "k": k}))
    elif suite == "lemmas":
        tasks.append(("lemma_cdinv", {"max_w": max_m, "max_h": max_n, "max_k": max_k}))
        tasks.append(("phi", {"max_k": 6}))
        tasks.append(("psi", {"max_m": min(max_m, 3), "max_n": min(max_n, 2), "max_k": max_k}))
        tasks.append(("schur_expansion", {"max_m": 4, "max_k": 3}))
        for m in range(1, min(max_m, 3) + 1):
            for n in range(1, min(max_n, 3) + 1):
                for alpha in ((1,), (2,), (1, 1), (0, 1)):
                    if sum(alpha) <= n:
                        tasks.append(("skewing", {"m": m, "n": n, "alpha": list(alpha)}))
        for m in range(1, min(max_m, 3) + 1):
            for n in range(0, min(max_n, 2) + 1):
                for k in range(0, max_k + 1):
                    tasks.append(("q1_refinement", {"m": m, "n": n, "k": k}))
    elif suite == "conjectures":
        for n in range(1, min(max_n, 3) + 1):
            for k in range(0, max_k + 1):
                tasks.append(("fall_square", {"n": n, "k": k}))
                tasks.append(("theta_identity", {"n": n, "k": k}))
        for m in range(1, max_m + 1):
            for n in range(1, max_n + 1):
                for k in range(0, max_k + 1):
                    if m + n + k > 5:
                        continue
                    for d in range(0, min(m + k, n + k) + 1):
                        tasks.append(("schroder", {"m": m, "n": n, "k": k, "d": d}))
    else:
        raise KeyError(f"unknown suite {suite!r}")
    return tasks
