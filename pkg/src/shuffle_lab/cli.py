"""Command-line interface: ``shuffle-lab <subcommand> ...``.

Exit codes: 0 success; 1 a theorem-status check failed; 2 usage error;
3 malformed path text; 4 degree overflow; 5 unknown identity or expression;
6 other invalid input.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor

from . import ehall
from . import macdonald as mac
from . import paths as P
from . import symfunc as sf
from . import verify as V
from .qtring import QtRat
from .symfunc import DegreeOverflowError, SymF

EXIT_OK = 0
EXIT_THEOREM_FAILED = 1
EXIT_USAGE = 2
EXIT_BAD_PATH = 3
EXIT_DEGREE = 4
EXIT_UNKNOWN = 5
EXIT_INVALID = 6


class ExpressionError(ValueError):
    """Unknown name or malformed symmetric-function expression."""


class PathTextError(ValueError):
    """Malformed path text."""


# --------------------------------------------------------------------------
# expression grammar
#
#   expr   := term (("+" | "-") term)*
#   term   := unary ("*" unary)*
#   unary  := "-" unary | op
#   op     := "nabla" unary | "omega" unary
#           | ("delta" | "theta" | "perp") "[" expr "]" unary
#           | atom
#   atom   := INT | "q" | "t" | "(" expr ")"
#           | ("e" | "p") "[" INT "," INT "]"             e_{m,n}, p_{m,n}
#           | ("s" | "h" | "e" | "p" | "m" | "H") "(" INT,* ")"   basis elements


_TOKENS = re.compile(r"\s*(?:(\d+)|([A-Za-z_]+)|(.))")
_BASIS_NAMES = {"s": "schur", "h": "homogeneous", "e": "elementary", "p": "power", "m": "monomial"}


def _tokenize(text: str) -> list:
    out = []
    for num, name, sym in _TOKENS.findall(text):
        if num:
            out.append(("int", int(num)))
        elif name:
            out.append(("name", name))
        elif sym.strip():
            out.append(("sym", sym))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            raise ExpressionError(f"expected {want!r} at token {self.pos}, got {tok[1]!r}")
        self.pos += 1
        return tok[1]

    def at(self, value) -> bool:
        return self.peek()[1] == value

    def parse(self) -> SymF:
        val = self.expr()
        if self.pos != len(self.toks):
            raise ExpressionError(f"unexpected trailing input at token {self.pos}")
        return val

    def expr(self) -> SymF:
        val = self.term()
        while self.at("+") or self.at("-"):
            op = self.take()
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self) -> SymF:
        val = self.unary()
        while self.at("*"):
            self.take()
            val = val * self.unary()
        return val

    def unary(self) -> SymF:
        if self.at("-"):
            self.take()
            return -self.unary()
        kind, value = self.peek()
        if kind == "name" and value in ("nabla", "omega"):
            self.take()
            arg = self.unary()
            return mac.nabla(arg) if value == "nabla" else sf.omega(arg)
        if kind == "name" and value in ("delta", "theta", "perp"):
            self.take()
            self.take("sym", "[")
            f = self.expr()
            self.take("sym", "]")
            arg = self.unary()
            if value == "delta":
                return mac.delta(f, arg)
            if value == "theta":
                return mac.theta(f, arg)
            return sf.perp(f, arg)
        return self.atom()

    def ints(self, close: str) -> tuple:
        vals = []
        while not self.at(close):
            vals.append(self.take("int"))
            if not self.at(close):
                self.take("sym", ",")
        self.take("sym", close)
        return tuple(vals)

    def atom(self) -> SymF:
        kind, value = self.peek()
        if kind == "int":
            self.take()
            return SymF.one() * value
        if kind == "sym" and value == "(":
            self.take()
            val = self.expr()
            self.take("sym", ")")
            return val
        if kind != "name":
            raise ExpressionError(f"unexpected token {value!r}")
        self.take()
        if value == "q":
            return SymF.one() * QtRat.monomial(1, 0)
        if value == "t":
            return SymF.one() * QtRat.monomial(0, 1)
        if value in ("e", "p") and self.at("["):
            self.take()
            args = self.ints("]")
            if len(args) != 2:
                raise ExpressionError(f"{value}[m,n] takes exactly two integers")
            return ehall.e_mn(*args) if value == "e" else ehall.p_mn(*args)
        if value in _BASIS_NAMES and self.at("("):
            self.take()
            return SymF.basis_element(_BASIS_NAMES[value], self.ints(")"))
        if value == "H" and self.at("("):
            self.take()
            return mac.htilde(self.ints(")"))
        raise ExpressionError(f"unknown identifier {value!r}")


def evaluate(text: str) -> SymF:
    """Evaluate an expression such as ``"nabla e(3)"`` or ``"perp[s(1)] e[2,3]"``."""
    try:
        return _Parser(text).parse()
    except ValueError as exc:
        if isinstance(exc, (ExpressionError, DegreeOverflowError)):
            raise
        raise ExpressionError(str(exc)) from exc


# --------------------------------------------------------------------------
# subcommands


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=False) + "\n")


def _cache_dir(arg: str | None) -> str | None:
    return os.environ.get("SHUFFLE_LAB_CACHE") or arg


def _cmd_enumerate(args) -> int:
    W, H = args.m + args.k, args.n + args.k
    paths = P.enumerate_paths(W, H, args.k, label_alphabet=args.labels, dyck_only=args.dyck)
    count = 0
    out = []
    for p in paths:
        if args.limit is not None and count >= args.limit:
            break
        count += 1
        if args.format == "json":
            out.append(p.to_json_obj(with_stats=True))
        else:
            prof = P.area_profile(p)
            line = f"{p.to_text()}\tarea={prof.area}\tcdinv={P.cdinv_C(p)}"
            if p.labels is not None:
                line += f"\tdinv={P.dinv(p)}"
            print(line)
    if args.format == "json":
        _emit({"width": W, "height": H, "k": args.k, "count": count, "paths": out})
    else:
        print(f"# {count} paths")
    return EXIT_OK


def _cmd_stats(args) -> int:
    try:
        p = P.Path.parse(args.path)
    except ValueError as exc:
        raise PathTextError(str(exc)) from exc
    obj = p.to_json_obj(with_stats=True)
    obj["stats"]["beta"] = list(P.beta(p))
    _emit(obj)
    return EXIT_OK


def _cmd_symfunc(args) -> int:
    val = evaluate(args.expr)
    val = sf.to_basis(val, args.basis)
    if args.format == "json":
        _emit(val.to_json_obj())
    else:
        print(val)
    return EXIT_OK


def _init_worker(cache_dir: str | None) -> None:
    if cache_dir:
        mac.set_cache(mac.MacCache(cache_dir))


def _run_task(task):
    cid, params = task
    return V.run_check(cid, params).to_json_obj()


def _cmd_verify(args) -> int:
    cache_dir = _cache_dir(args.cache_dir)
    _init_worker(cache_dir)
    tasks = V.suite_tasks(args.suite, args.max_m, args.max_n, args.max_k)
    if args.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs, initializer=_init_worker,
                                 initargs=(cache_dir,)) as pool:
            reports = list(pool.map(_run_task, tasks))
    else:
        reports = [_run_task(t) for t in tasks]
    failed = sum(1 for r in reports if r["status"] == "theorem" and not r["equal"])
    findings = sum(1 for r in reports if r["status"] == "conjecture" and not r["equal"])
    if args.format == "json":
        _emit({"suite": args.suite, "reports": reports, "theorem_failures": failed,
               "conjecture_findings": findings})
    else:
        for r in reports:
            verdict = "equal" if r["equal"] else "DIFFERENT"
            params = ", ".join(f"{k}={v}" for k, v in r["params"].items())
            print(f"[{r['status']}] {r['id']}({params}): {verdict} ({r['millis']} ms)")
            if "counterexample" in r:
                print(f"    counterexample: {json.dumps(r['counterexample'])}")
        print(f"# {len(reports)} checks, {failed} theorem failures, {findings} conjecture findings")
    return EXIT_THEOREM_FAILED if failed else EXIT_OK


def _cmd_cache(args) -> int:
    directory = _cache_dir(args.dir)
    if not directory:
        raise ValueError("no cache directory given (use --dir or SHUFFLE_LAB_CACHE)")
    cache = mac.MacCache(directory)
    if args.rebuild:
        with sf.degree_bound(max(sf.get_degree_bound(), args.max_degree)):
            written = cache.rebuild(args.max_degree)
        for path in written:
            print(path)
        return EXIT_OK
    found = sorted(p.name for p in cache.directory.glob("mac_deg_*.json")) if cache.directory.exists() else []
    for name in found:
        print(os.path.join(str(cache.directory), name))
    if not found:
        print(f"# no cache files in {cache.directory}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shuffle-lab",
                                     description="Decorated rectangular paths and shuffle identities.")
    sub = parser.add_subparsers(dest="command", required=True)

    en = sub.add_parser("enumerate", help="list (labeled, decorated) paths of size (m+k) x (n+k)")
    en.add_argument("--m", type=int, required=True)
    en.add_argument("--n", type=int, required=True)
    en.add_argument("--k", type=int, default=0)
    en.add_argument("--dyck", action="store_true", help="only paths weakly above the (broken) diagonal")
    en.add_argument("--labels", type=int, default=None, metavar="N", help="label with 1..N")
    en.add_argument("--limit", type=int, default=None)
    en.add_argument("--format", choices=("json", "text"), default="text")
    en.set_defaults(func=_cmd_enumerate)

    st = sub.add_parser("stats", help="statistics of one path, e.g. 'N(1)EN(2)E*E'")
    st.add_argument("--path", required=True)
    st.set_defaults(func=_cmd_stats)

    sy = sub.add_parser("symfunc", help="evaluate a symmetric-function expression")
    sy.add_argument("--expr", required=True)
    sy.add_argument("--basis", default="schur", choices=sorted(set(sf.BASES) | {"m", "s", "h", "e", "p"}))
    sy.add_argument("--format", choices=("json", "text"), default="text")
    sy.set_defaults(func=_cmd_symfunc)

    ve = sub.add_parser("verify", help="run a verification suite")
    ve.add_argument("--suite", choices=V.SUITES, required=True)
    ve.add_argument("--max-m", type=int, default=2)
    ve.add_argument("--max-n", type=int, default=2)
    ve.add_argument("--max-k", type=int, default=1)
    ve.add_argument("--jobs", type=int, default=1)
    ve.add_argument("--cache-dir", default=None)
    ve.add_argument("--format", choices=("json", "text"), default="text")
    ve.set_defaults(func=_cmd_verify)

    ca = sub.add_parser("cache", help="inspect or rebuild the Macdonald cache")
    ca.add_argument("--dir", default=None)
    ca.add_argument("--rebuild", action="store_true")
    ca.add_argument("--max-degree", type=int, default=6)
    ca.set_defaults(func=_cmd_cache)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PathTextError as exc:
        print(f"error: malformed path: {exc}", file=sys.stderr)
        return EXIT_BAD_PATH
    except DegreeOverflowError as exc:
        print(f"error: degree overflow: {exc}", file=sys.stderr)
        return EXIT_DEGREE
    except (ExpressionError, KeyError) as exc:
        print(f"error: unknown identity or expression: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
