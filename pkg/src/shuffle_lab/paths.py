"""Labeled, fall-decorated rectangular lattice paths and their statistics.

A path is a word over ``H`` (east) and ``V`` (north) ending with ``H``.  Some
horizontal steps that are immediately followed by another horizontal step
("falls") may be decorated.  For a path of size ``(m + k) x (n + k)`` with ``k``
decorations, the reference line is the *broken diagonal*: it rises by ``n/m``
across each plain column and by ``1`` across each decorated column.

Vertical distances are kept as integers scaled by ``m`` (the number of plain
horizontal steps), so a plain column adds ``n`` to the diagonal and a decorated
column adds ``m``.  Horizontal steps are measured at their right endpoint,
vertical steps at their bottom endpoint.  Every comparison is therefore exact.

Labels are positive integers.  "Big" (barred) labels ``i-bar`` are encoded as
``BAR + i`` so that every small label is smaller than every big one.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, permutations

from . import _zpoly as Z
from .qtring import ONE, ZERO, QtRat
from .symfunc import SymF, composition_sign, is_allowable, partitions

__all__ = [
    "BAR",
    "AreaProfile",
    "EnsPath",
    "FallLabeling",
    "Path",
    "PathSet",
    "SymmetryViolation",
    "area_profile",
    "attacks",
    "beta",
    "big",
    "cdinv",
    "cdinv_C",
    "cdinv_D",
    "dinv",
    "enumerate_paths",
    "ens",
    "fall_labelings",
    "falldinv",
    "fixed_point_labeling",
    "from_ens",
    "gen_fun",
    "is_big",
    "labelings",
    "lrd",
    "lrp",
    "phi",
    "phi_word",
    "psi",
    "psi_inverse",
    "r_values",
    "shapes",
    "star_order",
    "star_word",
    "tdinv",
]

BAR = 1 << 20


def big(i: int) -> int:
    """The barred label ``i-bar``."""
    return BAR + i


def is_big(label: int) -> bool:
    return label > BAR


def _label_text(label: int) -> str:
    return f"{label - BAR}bar" if is_big(label) else str(label)


class SymmetryViolation(RuntimeError):
    """A generating function that should be symmetric is not (a statistic bug)."""


# --------------------------------------------------------------------------
# paths


_TOKEN = re.compile(r"N(?:\((\d+)(bar)?\))?|E(\*)?")


@dataclass(frozen=True)
class Path:
    """A (labeled, decorated) rectangular path.

    ``steps`` is a word over ``"H"``/``"V"``; ``decorations`` holds indices of
    decorated horizontal steps; ``labels`` is ``None`` or one label per
    vertical step, in path order.
    """

    steps: tuple
    decorations: frozenset = field(default_factory=frozenset)
    labels: tuple | None = None

    def __post_init__(self):
        steps = tuple(self.steps)
        object.__setattr__(self, "steps", steps)
        object.__setattr__(self, "decorations", frozenset(self.decorations))
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
        if not steps or steps[-1] != "H":
            raise ValueError("a path must end with a horizontal step")
        if any(s not in ("H", "V") for s in steps):
            raise ValueError("steps must be 'H' or 'V'")
        for i in self.decorations:
            if not (0 <= i < len(steps) - 1) or steps[i] != "H" or steps[i + 1] != "H":
                raise ValueError(f"decorated step {i} is not a fall")
        if self.labels is not None:
            if len(self.labels) != self.height:
                raise ValueError("need exactly one label per vertical step")
            if any(not isinstance(w, int) or w < 1 for w in self.labels):
                raise ValueError("labels must be positive integers")
            pos = 0
            prev = None
            for s in steps:
                if s == "V":
                    w = self.labels[pos]
                    if prev is not None and w <= prev:
                        raise ValueError("labels must increase strictly within a column")
                    prev = w
                    pos += 1
                else:
                    prev = None

    # -- shape --
    @cached_property
    def width(self) -> int:
        return self.steps.count("H")

    @cached_property
    def height(self) -> int:
        return self.steps.count("V")

    @property
    def k(self) -> int:
        return len(self.decorations)

    @property
    def m(self) -> int:
        """Number of plain horizontal steps."""
        return self.width - self.k

    @property
    def n(self) -> int:
        return self.height - self.k

    @cached_property
    def vertical_steps(self) -> tuple:
        return tuple(i for i, s in enumerate(self.steps) if s == "V")

    @cached_property
    def horizontal_steps(self) -> tuple:
        """Indices of the non-decorated horizontal steps."""
        return tuple(i for i, s in enumerate(self.steps) if s == "H" and i not in self.decorations)

    @cached_property
    def decorated_steps(self) -> tuple:
        return tuple(sorted(self.decorations))

    @cached_property
    def scaled_heights(self) -> tuple:
        """``m * v_i`` for every step (see the module docstring)."""
        m, n = self.m, self.n
        y = diag = 0
        out = []
        for idx, s in enumerate(self.steps):
            if s == "V":
                out.append(m * y - diag)
                y += 1
            else:
                diag += m if idx in self.decorations else n
                out.append(m * y - diag)
        return tuple(out)

    def v(self, i: int) -> Fraction:
        """Signed vertical distance of step ``i`` from the broken diagonal."""
        return Fraction(self.scaled_heights[i], self.m)

    @cached_property
    def _label_pos(self) -> dict:
        return {idx: pos for pos, idx in enumerate(self.vertical_steps)}

    def label_of(self, i: int) -> int:
        if self.labels is None:
            raise ValueError("path is not labeled")
        return self.labels[self._label_pos[i]]

    @property
    def label_map(self) -> dict:
        if self.labels is None:
            return {}
        return dict(zip(self.vertical_steps, self.labels))

    @cached_property
    def columns(self) -> tuple:
        """Sizes of the maximal runs of vertical steps, bottom to top."""
        out = []
        run = 0
        for s in self.steps:
            if s == "V":
                run += 1
            elif run:
                out.append(run)
                run = 0
        return tuple(out)

    def with_labels(self, labels) -> "Path":
        return Path(self.steps, self.decorations, labels)

    def unlabeled(self) -> "Path":
        return Path(self.steps, self.decorations, None)

    def is_dyck(self, broken: bool = True) -> bool:
        """Weakly above the broken diagonal (or the straight one if ``broken`` is false)."""
        if broken:
            hs = self.scaled_heights
            return all(hs[i] >= 0 for i, s in enumerate(self.steps) if s == "H")
        W, Hh = self.width, self.height
        x = y = 0
        for s in self.steps:
            if s == "V":
                y += 1
            else:
                x += 1
                if W * y - Hh * x < 0:
                    return False
        return True

    # -- text --
    def to_text(self) -> str:
        out = []
        pos = 0
        for idx, s in enumerate(self.steps):
            if s == "V":
                if self.labels is None:
                    out.append("N")
                else:
                    out.append(f"N({_label_text(self.labels[pos])})")
                pos += 1
            else:
                out.append("E*" if idx in self.decorations else "E")
        return "".join(out)

    @classmethod
    def parse(cls, text: str) -> "Path":
        """Parse the step-word format, e.g. ``"N(1)EEN(2)N(4)E*E"`` or ``"N(1bar)E"``."""
        text = "".join(text.split())
        steps, decs, labels = [], set(), []
        pos = 0
        while pos < len(text):
            mt = _TOKEN.match(text, pos)
            if not mt:
                raise ValueError(f"malformed path text at position {pos}: {text!r}")
            if mt.group(0).startswith("N"):
                steps.append("V")
                if mt.group(1) is not None:
                    w = int(mt.group(1))
                    labels.append(big(w) if mt.group(2) else w)
            else:
                if mt.group(3):
                    decs.add(len(steps))
                steps.append("H")
            pos = mt.end()
        if labels and len(labels) != steps.count("V"):
            raise ValueError("either every vertical step is labeled or none is")
        return cls(tuple(steps), frozenset(decs), tuple(labels) if labels else None)

    def __str__(self) -> str:
        return self.to_text()

    def to_json_obj(self, with_stats: bool = True) -> dict:
        obj = {
            "width": self.width,
            "height": self.height,
            "steps": ["E" if s == "H" else "N" for s in self.steps],
            "decorations": sorted(self.decorations),
            "labels": {str(i): _label_text(w) for i, w in self.label_map.items()},
        }
        if with_stats:
            prof = area_profile(self)
            stats = {
                "area": prof.area,
                "shift": str(prof.shift),
                "vertical_area_word": [str(v) for v in prof.vertical_area_word],
                "cdinv": cdinv_C(self),
            }
            if self.labels is not None:
                stats["tdinv"] = tdinv(self)
                stats["dinv"] = stats["tdinv"] + stats["cdinv"]
            obj["stats"] = stats
        return obj


@dataclass(frozen=True)
class AreaProfile:
    vertical_area_word: tuple
    shift: Fraction
    area: int


def area_profile(p: Path) -> AreaProfile:
    """Vertical area word, shift and area (measured against the broken diagonal)."""
    m = p.m
    hs = p.scaled_heights
    scaled = [hs[i] for i in p.horizontal_steps]
    low = min(scaled)
    s = -low
    area = sum((x + s) // m for x in scaled)
    return AreaProfile(tuple(Fraction(x, m) for x in scaled), Fraction(s, m), area)


# --------------------------------------------------------------------------
# attack relation, tdinv, cdinv, dinv


def attacks(p: Path, i: int, j: int) -> bool:
    """``(v_i, i) < (v_j, j) < (v_i + 1, i)`` lexicographically (``i``, ``j`` vertical)."""
    if p.steps[i] != "V" or p.steps[j] != "V":
        raise ValueError("the attack relation is defined on vertical steps")
    hs, m = p.scaled_heights, p.m
    return (hs[i], i) < (hs[j], j) < (hs[i] + m, i)


def _attack_pairs(p: Path) -> list:
    """Pairs ``(a, b)`` of vertical-step ordinals with step ``a`` attacking step ``b``."""
    hs, m = p.scaled_heights, p.m
    vs = p.vertical_steps
    out = []
    for a, i in enumerate(vs):
        lo, hi = (hs[i], i), (hs[i] + m, i)
        for b, j in enumerate(vs):
            if lo < (hs[j], j) < hi:
                out.append((a, b))
    return out


def tdinv(p: Path) -> int:
    """Attacking pairs ``i -> j`` with ``w_i < w_j``."""
    w = p.labels
    if w is None:
        raise ValueError("tdinv needs a labeled path")
    return sum(1 for a, b in _attack_pairs(p) if w[a] < w[b])


def r_values(p: Path) -> dict:
    """For each plain horizontal step, the number of decorated falls right before it."""
    out = {}
    run = 0
    for idx, s in enumerate(p.steps):
        if s != "H":
            run = 0
        elif idx in p.decorations:
            run += 1
        else:
            out[idx] = run
            run = 0
    return out


def beta(p: Path) -> tuple:
    """The fall-composition: ``r_j`` over the plain horizontal steps, in order."""
    r = r_values(p)
    return tuple(r[j] for j in p.horizontal_steps)


def _b_count(p: Path) -> int:
    hs = p.scaled_heights
    return sum(1 for i in p.vertical_steps if hs[i] < 0)


def cdinv_D(p: Path) -> int:
    """The dinv correction from the sets ``D+, D-, D+*, D-*, B, B*``."""
    hs, m, n = p.scaled_heights, p.m, p.n
    V, H, DS = p.vertical_steps, p.horizontal_steps, p.decorated_steps
    total = 0
    for i in V:
        vi = hs[i]
        for j in H:
            if j >= i:
                break
            vj = hs[j]
            if vi < vj <= vi + m - n:
                total += 1
            if vj <= vi < vj + n - m:
                total -= 1
    for i in DS:
        vi = hs[i]
        for j in H:
            if j <= i:
                continue
            vj = hs[j]
            if vi <= vj < vi + m - n:
                total += 1
            if vj < vi <= vj - m + n:
                total -= 1
    total += _b_count(p)
    total -= sum(1 for i in DS if hs[i] <= 0)
    return total


def cdinv_C(p: Path) -> int:
    """The dinv correction from the sets ``C+, C-, C*, B``."""
    hs, m, n = p.scaled_heights, p.m, p.n
    V, H, DS = p.vertical_steps, p.horizontal_steps, p.decorated_steps
    r = r_values(p)
    total = 0
    for i in V:
        vi = hs[i]
        for j in H:
            if j >= i:
                break
            vj = hs[j]
            if r[j] == 0 and vi < vj <= vi + m - n:
                total += 1
            if vj <= vi < vj + n + m * r[j] - m:
                total -= 1
    decs = p.decorations
    targets = [(j, hs[j] + (m if j in decs else n)) for j in sorted(set(H) | decs)]
    for i in DS:
        vi = hs[i]
        for j, vplus in targets:
            if i < j - 1 and vi <= vplus < vi + m:
                total += 1
    return total + _b_count(p)


cdinv = cdinv_C


def dinv(p: Path) -> int:
    return tdinv(p) + cdinv_C(p)


# --------------------------------------------------------------------------
# enumeration


def shapes(width: int, height: int, k: int = 0, dyck_only: bool = False,
           broken: bool = True):
    """Unlabeled paths of size ``width x height`` with exactly ``k`` decorated falls.

    Generated depth first; partial paths that cannot be completed (or that drop
    below the diagonal when ``dyck_only``) are pruned immediately.
    """
    m, n = width - k, height - k
    if width < 1 or height < 0 or k < 0 or m < 1 or n < 0:
        return
    steps: list = []
    decs: list = []

    def ok(y, x, diag):
        if not dyck_only:
            return True
        if broken:
            return m * y - diag >= 0
        return width * y - height * x >= 0

    def rec(x, y, diag, used, must_h):
        if x == width and y == height:
            if steps[-1] == "H" and used == k:
                yield Path(tuple(steps), frozenset(decs))
            return
        if y < height and not must_h:
            steps.append("V")
            yield from rec(x, y + 1, diag, used, False)
            steps.pop()
        if x < width:
            # plain horizontal step
            if width - x - 1 >= k - used:
                steps.append("H")
                d2 = diag + n
                if ok(y, x + 1, d2):
                    yield from rec(x + 1, y, d2, used, False)
                steps.pop()
            # decorated fall (the next step is forced to be horizontal)
            if used < k and x + 1 < width:
                steps.append("H")
                decs.append(len(steps) - 1)
                d2 = diag + m
                if ok(y, x + 1, d2):
                    yield from rec(x + 1, y, d2, used + 1, True)
                decs.pop()
                steps.pop()

    yield from rec(0, 0, 0, 0, False)


def _fill_columns(cols, alphabet, counts):
    """Column-strict fillings using each ``alphabet[x]`` exactly ``counts[x]`` times."""
    total = sum(cols)
    out = [0] * total
    ncols = len(cols)

    def rec(ci, pos):
        if ci == ncols:
            yield tuple(out)
            return
        h = cols[ci]
        rest = ncols - ci - 1
        avail = [x for x, c in enumerate(counts) if c > 0]
        for combo in combinations(avail, h):
            for x in combo:
                counts[x] -= 1
            if max(counts, default=0) <= rest:
                for off, x in enumerate(combo):
                    out[pos + off] = alphabet[x]
                yield from rec(ci + 1, pos + h)
            for x in combo:
                counts[x] += 1

    if sum(counts) != total:
        return iter(())
    return rec(0, 0)


def labelings(p: Path, alphabet_size: int, big_content=()):
    """Label tuples for ``p`` with small labels in ``1..alphabet_size`` and exactly
    ``big_content[i-1]`` vertical steps labeled ``i-bar``."""
    cols = p.columns
    nbig = sum(big_content)
    nsmall = p.height - nbig
    if nsmall < 0:
        return
    bigs = [big(i + 1) for i, c in enumerate(big_content) if c]
    bigc = [c for c in big_content if c]

    def rec(ci, pos, left_small, bcounts, acc):
        if ci == len(cols):
            if left_small == 0:
                yield tuple(acc)
            return
        h = cols[ci]
        rest = len(cols) - ci - 1
        for nb in range(0, h + 1):
            ns = h - nb
            if ns > left_small:
                continue
            avail_b = [x for x, c in enumerate(bcounts) if c > 0]
            for bcombo in combinations(avail_b, nb):
                for x in bcombo:
                    bcounts[x] -= 1
                if max(bcounts, default=0) <= rest:
                    for scombo in combinations(range(1, alphabet_size + 1), ns):
                        yield from rec(ci + 1, pos + h, left_small - ns, bcounts,
                                       acc + list(scombo) + [bigs[x] for x in bcombo])
                for x in bcombo:
                    bcounts[x] += 1

    yield from rec(0, 0, nsmall, list(bigc), [])


def enumerate_paths(width: int, height: int, k: int = 0, label_alphabet: int | None = None,
                    big_content=None, dyck_only: bool = False, broken: bool = True):
    """Stream the paths of the requested set, each exactly once.

    Without ``label_alphabet`` the paths are unlabeled.  With it, every
    column-strict labeling with small labels ``1..label_alphabet`` (plus the
    prescribed big labels) is produced.
    """
    big_content = tuple(big_content or ())
    for shape in shapes(width, height, k, dyck_only, broken):
        if label_alphabet is None and not big_content:
            yield shape
            continue
        for w in labelings(shape, label_alphabet or 0, big_content):
            yield shape.with_labels(w)


# --------------------------------------------------------------------------
# ENS representation


@dataclass(frozen=True)
class EnsPath:
    """East/North/South word.  Each entry is ``(kind, origin, label)`` with kind in
    ``E, N, S*, S``; ``origin`` is the index of the step in the source path
    (``None`` for inserted South steps)."""

    entries: tuple
    source_kind: str  # "decorated" or "big"
    k: int

    @property
    def word(self) -> str:
        return "".join(kind if kind != "S*" else "S*" for kind, _, _ in self.entries)

    def vertical_distances(self) -> dict:
        """Distances to the straight diagonal of the ENS picture, by source index.

        East steps are measured at the right endpoint, North steps at the bottom
        endpoint and decorated South steps at the bottom endpoint.
        """
        m = sum(1 for kind, _, _ in self.entries if kind == "E")
        n = sum(1 for kind, _, _ in self.entries if kind == "N") - sum(
            1 for kind, _, _ in self.entries if kind in ("S", "S*"))
        x = y = 0
        out = {}
        for kind, origin, _ in self.entries:
            if kind == "N":
                if origin is not None:
                    out[origin] = Fraction(m * y - n * x, m)
                y += 1
            elif kind == "E":
                x += 1
                out[origin] = Fraction(m * y - n * x, m)
            else:
                y -= 1
                if kind == "S*" and origin is not None:
                    out[origin] = Fraction(m * y - n * x, m)
        return out


def ens(p: Path, k: int | None = None) -> EnsPath:
    """The ENS representation.

    For a decorated path each decorated East step becomes a decorated South
    step.  For a path carrying big labels ``1-bar..k-bar``, ``k`` South steps are
    inserted before every East step ``j``: ``a_j`` plain ones (``a_j`` = number of
    big-label steps right before ``j``) followed by ``k - a_j`` decorated ones.
    """
    labels = p.label_map
    has_big = any(is_big(w) for w in labels.values())
    if p.decorations and has_big:
        raise ValueError("a path cannot carry both decorations and big labels")
    if p.decorations or not (has_big or k):
        entries = []
        for idx, s in enumerate(p.steps):
            if s == "V":
                entries.append(("N", idx, labels.get(idx)))
            elif idx in p.decorations:
                entries.append(("S*", idx, None))
            else:
                entries.append(("E", idx, None))
        return EnsPath(tuple(entries), "decorated", p.k)
    if k is None:
        k = max(w - BAR for w in labels.values() if is_big(w))
    entries = []
    a = 0
    for idx, s in enumerate(p.steps):
        if s == "V":
            w = labels.get(idx)
            a = a + 1 if w is not None and is_big(w) else 0
            entries.append(("N", idx, w))
        else:
            if a > k:
                raise ValueError("more than k big labels in a column")
            entries.extend([("S", None, None)] * a)
            entries.extend([("S*", None, None)] * (k - a))
            entries.append(("E", idx, None))
            a = 0
    return EnsPath(tuple(entries), "big", k)


def from_ens(e: EnsPath) -> Path:
    """Inverse of :func:`ens`."""
    steps, decs, labels = [], set(), []
    for kind, _, label in e.entries:
        if kind == "N":
            steps.append("V")
            labels.append(label)
        elif kind == "E":
            steps.append("H")
        elif kind == "S*" and e.source_kind == "decorated":
            decs.add(len(steps))
            steps.append("H")
    lab = None if any(w is None for w in labels) else tuple(labels)
    return Path(tuple(steps), frozenset(decs), lab)


# --------------------------------------------------------------------------
# fall-labelings, star words, phi


@dataclass(frozen=True)
class FallLabeling:
    """Barred labels on decorated falls: ``items`` are ``(step index, i)`` meaning ``i-bar``."""

    items: tuple
    k: int

    @property
    def label_map(self) -> dict:
        return dict(self.items)

    def content(self) -> tuple:
        c = Counter(w for _, w in self.items)
        return tuple(c.get(i, 0) for i in range(1, self.k + 1))

    def is_allowable(self) -> bool:
        return is_allowable(self.content())

    def sign(self) -> int:
        return composition_sign(self.content())

    def __str__(self) -> str:
        return " ".join(f"{i}:{w}bar" for i, w in self.items)


def _runs(p: Path) -> list:
    """Maximal runs of consecutive decorated steps."""
    out, cur = [], []
    for idx in p.decorated_steps:
        if cur and idx == cur[-1] + 1:
            cur.append(idx)
        else:
            if cur:
                out.append(cur)
            cur = [idx]
    if cur:
        out.append(cur)
    return out


def fall_labelings(p: Path, allowable_only: bool = True, content=None):
    """All fall-labelings of ``p`` (labels ``1..k``, strictly increasing along runs)."""
    k = p.k
    runs = _runs(p)
    want = None if content is None else tuple(content) + (0,) * (k - len(tuple(content)))

    def rec(ri, acc):
        if ri == len(runs):
            f = FallLabeling(tuple(sorted(acc)), k)
            if want is not None and f.content() != want:
                return
            if allowable_only and not f.is_allowable():
                return
            yield f
            return
        run = runs[ri]
        for combo in combinations(range(1, k + 1), len(run)):
            yield from rec(ri + 1, acc + list(zip(run, combo)))

    yield from rec(0, [])


def star_order(p: Path) -> list:
    """Decorated steps by decreasing vertical distance, top (later) first on ties."""
    hs = p.scaled_heights
    return sorted(p.decorated_steps, key=lambda i: (-hs[i], -i))


def star_word(p: Path, f: FallLabeling) -> tuple:
    lab = f.label_map
    return tuple(lab[i] for i in star_order(p))


def fixed_point_labeling(p: Path) -> FallLabeling:
    """The fall-labeling whose star word is ``1 2 ... k``."""
    return FallLabeling(tuple(sorted((i, pos + 1) for pos, i in enumerate(star_order(p)))), p.k)


def phi_word(word) -> tuple:
    """The sign-reversing involution on words of length ``k`` with allowable content.

    ``p``: the largest entry that occurs once, has a smaller entry in the word,
    and sits left of every copy of ``q`` (the largest smaller entry).  ``r``: the
    largest repeated entry; ``s``: the smallest entry above ``r`` (``k + 1`` if
    none).  If ``p`` exists and beats ``r``, ``p`` becomes ``q``; if ``r`` exists and
    beats ``p``, the first ``r`` becomes ``s - 1``; otherwise nothing changes.
    """
    a = list(word)
    k = len(a)
    cnt = Counter(a)
    content = tuple(cnt.get(i, 0) for i in range(1, k + 1))
    if sum(content) != k or not is_allowable(content):
        raise ValueError(f"word {tuple(word)} does not have allowable content")
    distinct = sorted(cnt)
    p = q = None
    for pos, val in enumerate(reversed(distinct)):
        if cnt[val] != 1:
            continue
        idx = len(distinct) - 1 - pos
        if idx == 0:
            continue
        qv = distinct[idx - 1]
        ip = a.index(val)
        if all(ip < i for i, x in enumerate(a) if x == qv):
            p, q = val, qv
            break
    repeated = [v for v in distinct if cnt[v] > 1]
    r = repeated[-1] if repeated else None
    if p is not None and (r is None or p > r):
        a[a.index(p)] = q
    elif r is not None and (p is None or p < r):
        above = [v for v in distinct if v > r]
        s = above[0] if above else k + 1
        a[a.index(r)] = s - 1
    return tuple(a)


def phi(p: Path, f: FallLabeling) -> FallLabeling:
    """Lift of :func:`phi_word` to fall-labelings through the star word."""
    order = star_order(p)
    new = phi_word(star_word(p, f))
    return FallLabeling(tuple(sorted(zip(order, new))), f.k)


# --------------------------------------------------------------------------
# psi: big-labeled m x (n + km) paths <-> fall-labeled decorated paths


def psi(pt: Path, k: int) -> tuple:
    """Delete the big-label steps and put ``k - a_j`` decorated falls before each
    horizontal step ``j`` (``a_j`` big steps were right before it), labeled by the
    complement of that column's big labels."""
    if pt.decorations:
        raise ValueError("psi expects an undecorated path with big labels")
    if pt.labels is None:
        raise ValueError("psi expects a labeled path")
    steps, labels, decs, fall = [], [], set(), []
    column_big: list = []
    for idx, s in enumerate(pt.steps):
        if s == "V":
            w = pt.label_of(idx)
            if is_big(w):
                i = w - BAR
                if not 1 <= i <= k:
                    raise ValueError(f"big label {i}bar outside 1..{k}")
                column_big.append(i)
            else:
                steps.append("V")
                labels.append(w)
        else:
            for i in range(1, k + 1):
                if i not in column_big:
                    decs.add(len(steps))
                    fall.append((len(steps), i))
                    steps.append("H")
            steps.append("H")
            column_big = []
    return Path(tuple(steps), frozenset(decs), tuple(labels)), FallLabeling(tuple(fall), k)


def psi_inverse(p: Path, f: FallLabeling) -> Path:
    k = p.k
    if f.k != k or set(f.label_map) != set(p.decorations):
        raise ValueError("fall-labeling does not match the path")
    if p.labels is None:
        raise ValueError("psi_inverse expects a labeled path")
    lab = f.label_map
    steps, labels, run = [], [], []
    for idx, s in enumerate(p.steps):
        if s == "V":
            steps.append("V")
            labels.append(p.label_of(idx))
        elif idx in p.decorations:
            run.append(lab[idx])
        else:
            for i in range(1, k + 1):
                if i not in run:
                    steps.append("V")
                    labels.append(big(i))
            steps.append("H")
            run = []
    return Path(tuple(steps), frozenset(), tuple(labels))


def falldinv(p: Path, f: FallLabeling) -> int:
    """Attacking pairs of ``psi_inverse(p, f)`` whose attacked step has a big label."""
    pt = psi_inverse(p, f)
    w = pt.labels
    return sum(1 for a, b in _attack_pairs(pt) if is_big(w[b]) and w[a] < w[b])


# --------------------------------------------------------------------------
# generating functions


@dataclass(frozen=True)
class PathSet:
    """A family of paths: size, number of decorations, Dyck restriction, big labels."""

    width: int
    height: int
    k: int = 0
    dyck_only: bool = False
    big_content: tuple = ()
    broken: bool = True

    def shapes(self):
        return shapes(self.width, self.height, self.k, self.dyck_only, self.broken)

    @property
    def small_degree(self) -> int:
        return self.height - sum(self.big_content)


def lrd(m: int, n: int, k: int = 0, big_content=()) -> PathSet:
    """Labeled Dyck paths of size ``(m + k) x (n + k)`` with ``k`` decorated falls."""
    return PathSet(m + k, n + k, k, True, tuple(big_content))


def lrp(m: int, n: int, k: int = 0, big_content=()) -> PathSet:
    """Labeled paths of size ``(m + k) x (n + k)`` with ``k`` decorated falls."""
    return PathSet(m + k, n + k, k, False, tuple(big_content))


def _weight(counts: dict) -> QtRat:
    """``sum c q^i t^j`` for a dict ``(i, j) -> c`` (``i`` may be negative)."""
    if not counts:
        return ZERO
    imin = min(i for i, _ in counts)
    shift = min(imin, 0)
    poly = {Z.mono(i - shift, j): c for (i, j), c in counts.items() if c}
    val = QtRat._make(poly, Z.ONE)
    return val * QtRat.monomial(shift, 0) if shift else val


def _targets(la: tuple, nvars: int, symmetry: str) -> list:
    if symmetry == "none":
        return [la]
    if symmetry == "full":
        padded = la + (0,) * (nvars - len(la))
        return [la] + sorted(set(permutations(padded)) - {padded}, reverse=True)
    out = [la]
    rev = tuple(reversed(la))
    if rev != la:
        out.append(rev)
    return out


def gen_fun(S: PathSet, nvars: int | None = None, symmetry: str = "sample",
            shape_filter=None) -> SymF:
    """``sum q^dinv t^area x^pi`` over the labeled paths of ``S``, in the monomial basis.

    Labels are collected by content: for each partition ``la`` the coefficient
    of ``m_la`` is the weighted count of labelings with content exactly ``la``.
    Symmetry is verified rather than assumed: with ``symmetry="sample"`` the
    reversed content is also counted, with ``"full"`` every rearrangement (padded
    to ``nvars`` letters); a mismatch raises :class:`SymmetryViolation`.
    """
    deg = S.small_degree
    if deg < 0:
        return SymF.zero("monomial")
    nvars = deg if nvars is None else nvars
    las = [la for la in partitions(deg) if len(la) <= nvars]
    plan = {la: _targets(la, nvars, symmetry) for la in las}
    big_c = [c for c in S.big_content if c]
    big_labels = [big(i + 1) for i, c in enumerate(S.big_content) if c]
    acc: dict = {}
    for shape in S.shapes():
        if shape_filter is not None and not shape_filter(shape):
            continue
        area = area_profile(shape).area
        base = cdinv_C(shape)
        pairs = _attack_pairs(shape)
        cols = shape.columns
        for la, targets in plan.items():
            for target in targets:
                alphabet = [i + 1 for i, c in enumerate(target) if c] + big_labels
                counts = [c for c in target if c] + big_c
                bucket = acc.setdefault(target, {})
                for w in _fill_columns(cols, alphabet, list(counts)):
                    d = base + sum(1 for a, b in pairs if w[a] < w[b])
                    bucket[(d, area)] = bucket.get((d, area), 0) + 1
    terms = {}
    for la, targets in plan.items():
        ref = acc.get(la, {})
        for target in targets[1:]:
            other = acc.get(target, {})
            if {x: c for x, c in other.items() if c} != {x: c for x, c in ref.items() if c}:
                raise SymmetryViolation(
                    f"coefficient of x^{target} differs from x^{la} in {S}")
        val = _weight(ref)
        if val:
            terms[la] = val
    return SymF("monomial", terms)
