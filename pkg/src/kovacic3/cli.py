"""Command-line front end.

Subcommands: classify | solve | verify | corpus.  Operators are written in a
textual syntax in z and Dz, e.g.

    Dz^3 + (1/2)*(7*z-4)/(z*(z-1))*Dz^2 + (1/27)*(41*z-6)/(z^2*(z-1))*Dz - (2/729)/(z^2*(z-1))

Exit codes: 0 success; 1 no-Liouvillian verdict (a valid answer, flagged);
2 input error; 3 internal or verification failure.

Corpus fixture files: "operator:" line with the expression, then optional
"expect-<key>: value" lines (classification, riccati, 3f2, candidate-count,
splitting-count); "# " lines are comments.
"""

from __future__ import annotations

import argparse
import signal
import sys
import time
from pathlib import Path

from .diffop import DiffOp
from .errors import Kovacic3Error, OrderError, ParseError
from .rationals import QQ, qq
from .ratfunc import RatFunc
from .unipoly import UniPoly

EXIT_OK = 0
EXIT_NO_LIOUVILLIAN = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


# ---------------------------------------------------------------------------
# operator parsing
# ---------------------------------------------------------------------------


class _Tok:
    def __init__(self, kind, val, pos):
        self.kind = kind
        self.val = val
        self.pos = pos


def _tokenize(text: str):
    toks = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(_Tok("int", int(text[i:j]), i))
            i = j
            continue
        if text.startswith("Dz", i):
            toks.append(_Tok("Dz", None, i))
            i += 2
            continue
        if c == "z":
            toks.append(_Tok("z", None, i))
            i += 1
            continue
        if c in "+-*/^()":
            toks.append(_Tok(c, None, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {c!r}", position=i)
    toks.append(_Tok("end", None, len(text)))
    return toks


class _OpExpr:
    """Operator-valued parse values: coefficient list over RatFunc."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = coeffs  # list of RatFunc, index = Dz power

    @staticmethod
    def const(r: RatFunc):
        return _OpExpr([r])

    def is_scalar(self):
        return len(self.coeffs) == 1

    def __add__(self, o):
        n = max(len(self.coeffs), len(o.coeffs))
        out = [RatFunc.zero() for _ in range(n)]
        for i, c in enumerate(self.coeffs):
            out[i] = out[i] + c
        for i, c in enumerate(o.coeffs):
            out[i] = out[i] + c
        return _OpExpr(out)

    def __neg__(self):
        return _OpExpr([-c for c in self.coeffs])

    def mul(self, o, pos):
        # operator composition: sum_i a_i Dz^i . sum_j b_j Dz^j
        out = [RatFunc.zero() for _ in range(len(self.coeffs) + len(o.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            # Dz^i . b_j Dz^j = sum_k C(i,k) b_j^(k) Dz^(i+j-k)
            from math import comb

            for j, b in enumerate(o.coeffs):
                if b.is_zero():
                    continue
                d = b
                for k in range(i + 1):
                    out[i + j - k] = out[i + j - k] + a * d * QQ(comb(i, k))
                    d = d.derivative()
        return _OpExpr(out)

    def div(self, o, pos):
        if not o.is_scalar():
            raise ParseError("division by a differential expression", position=pos)
        if o.coeffs[0].is_zero():
            raise ParseError("division by zero", position=pos)
        inv = RatFunc.one() / o.coeffs[0]
        return _OpExpr([c * inv for c in self.coeffs])

    def pow(self, k: int, pos):
        if k < 0:
            raise ParseError("negative operator power", position=pos)
        r = _OpExpr.const(RatFunc.one())
        for _ in range(k):
            r = r.mul(self, pos)
        return r


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def eat(self, kind=None):
        t = self.toks[self.i]
        if kind and t.kind != kind:
            raise ParseError(f"expected {kind}, found {t.kind}", position=t.pos)
        self.i += 1
        return t

    def parse(self) -> _OpExpr:
        e = self.expr()
        t = self.peek()
        if t.kind != "end":
            raise ParseError(f"unexpected trailing {t.kind}", position=t.pos)
        return e

    def expr(self):
        t = self.peek()
        neg = False
        if t.kind in "+-":
            self.eat()
            neg = t.kind == "-"
        e = self.term()
        if neg:
            e = -e
        while self.peek().kind in "+-":
            op = self.eat().kind
            rhs = self.term()
            e = e + (-rhs if op == "-" else rhs)
        return e

    def term(self):
        e = self.factor()
        while self.peek().kind in "*/":
            op = self.eat()
            rhs = self.factor()
            e = e.mul(rhs, op.pos) if op.kind == "*" else e.div(rhs, op.pos)
        return e

    def factor(self):
        e = self.atom()
        if self.peek().kind == "^":
            t = self.eat()
            k = self.eat("int").val
            e = e.pow(k, t.pos)
        return e

    def atom(self):
        t = self.peek()
        if t.kind == "int":
            self.eat()
            return _OpExpr.const(RatFunc(UniPoly.const(QQ(t.val))))
        if t.kind == "z":
            self.eat()
            return _OpExpr.const(RatFunc.gen())
        if t.kind == "Dz":
            self.eat()
            return _OpExpr([RatFunc.zero(), RatFunc.one()])
        if t.kind == "(":
            self.eat()
            e = self.expr()
            self.eat(")")
            return e
        if t.kind == "-":
            self.eat()
            return -self.atom()
        raise ParseError(f"unexpected {t.kind}", position=t.pos)


def parse_operator(text: str, require_order3: bool = True) -> DiffOp:
    """Parse the textual operator syntax into a normalized DiffOp."""
    expr = _Parser(text).parse()
    coeffs = list(expr.coeffs)
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    if not coeffs:
        raise ParseError("zero operator")
    L = DiffOp(coeffs)
    if require_order3 and L.order != 3:
        raise OrderError(f"operator order {L.order}, expected 3")
    return L


# ---------------------------------------------------------------------------
# pipeline
# ---------------------------------------------------------------------------


def run_pipeline(
    L: DiffOp,
    classify_only: bool = False,
    verify: bool = False,
    long_tier: bool = True,
    series_margin: int | None = None,
):
    from .classify import SolutionSet, classify_galois_group, kovacic_order3
    from .resultdoc import document_from_solution
    from .verify import verify_pullback, verify_riccati

    timings = {}
    t0 = time.perf_counter()
    if classify_only:
        cls = classify_galois_group(L)
        timings["classify"] = time.perf_counter() - t0
        solset = SolutionSet(classification=cls, kind="none", prefactor=cls.prefactor)
        solset.notes.append("classification only")
        return document_from_solution(L, solset, timings=timings)
    solset = kovacic_order3(L, long_tier=long_tier)
    timings["solve"] = time.perf_counter() - t0
    report = None
    if verify:
        t1 = time.perf_counter()
        if solset.kind == "riccati":
            R, _w = solset.riccati
            report = verify_riccati(solset.classification.L0, R)
        elif solset.kind == "pullback" and solset.pullback is not None:
            report = verify_pullback(solset.classification.L0, solset.pullback)
        timings["verify"] = time.perf_counter() - t1
    return document_from_solution(L, solset, verification=report, timings=timings)


# ---------------------------------------------------------------------------
# corpus runner
# ---------------------------------------------------------------------------


def parse_fixture(path: Path) -> dict:
    spec = {"expect": {}}
    for line in path.read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("operator:"):
            spec["operator"] = line[len("operator:"):].strip()
        elif line.startswith("expect-"):
            key, _, val = line.partition(":")
            spec["expect"][key[len("expect-"):].strip()] = val.strip()
        elif line.startswith("mode:"):
            spec["mode"] = line[len("mode:"):].strip()
    if "operator" not in spec:
        from .errors import FixtureError

        raise FixtureError(f"{path}: no operator line")
    return spec


def check_fixture(path: Path) -> tuple[bool, str, float]:
    from .classify import classify_galois_group
    from .errors import FixtureError
    from .semiinv import hyperexp_part_candidate_count

    spec = parse_fixture(path)
    t0 = time.perf_counter()
    L = parse_operator(spec["operator"])
    expect = spec["expect"]
    mode = spec.get("mode", "classify")
    msgs = []
    ok = True
    if mode == "solve":
        doc = run_pipeline(L, verify=True)
        cls_tag = doc.classification
        if doc.verification and not doc.verification["passed"]:
            ok = False
            msgs.append("verification failed")
        if "riccati" in expect:
            got = doc.payload.get("riccati", "")
            if _normalize_ws(got) != _normalize_ws(expect["riccati"]):
                ok = False
                msgs.append(f"riccati mismatch: {got}")
        if "3f2" in expect:
            got = doc.payload.get("hypergeometric", "")
            if got != expect["3f2"]:
                ok = False
                msgs.append(f"3F2 mismatch: {got}")
    else:
        cls = classify_galois_group(L)
        cls_tag = cls.tag
        L0 = cls.L0
        if "candidate-count" in expect and L0 is not None:
            got = hyperexp_part_candidate_count(L0)
            if str(got) != expect["candidate-count"]:
                ok = False
                msgs.append(f"candidate count {got}")
        if "splitting-count" in expect and L0 is not None:
            got = hyperexp_part_candidate_count(L0, splitting_field=True)
            if str(got) != expect["splitting-count"]:
                ok = False
                msgs.append(f"splitting count {got}")
    if "classification" in expect and cls_tag != expect["classification"]:
        ok = False
        msgs.append(f"classification {cls_tag} != {expect['classification']}")
    return ok, "; ".join(msgs) or "ok", time.perf_counter() - t0


def _normalize_ws(s: str) -> str:
    return "".join(s.split())


def run_corpus(fixture_dir: Path) -> int:
    from .errors import FixtureError

    files = sorted(Path(fixture_dir).glob("*.fixture"))
    if not files:
        print(f"no .fixture files in {fixture_dir}", file=sys.stderr)
        return EXIT_INPUT
    failures = 0
    for f in files:
        try:
            ok, msg, dt = check_fixture(f)
        except (Kovacic3Error, Exception) as exc:  # noqa: BLE001 - report and count
            ok, msg, dt = False, f"error: {exc}", 0.0
        print(f"{'PASS' if ok else 'FAIL'} {f.name:40s} {dt:8.2f}s  {msg}")
        if not ok:
            failures += 1
    print(f"{len(files) - failures}/{len(files)} fixtures passed")
    return EXIT_OK if failures == 0 else EXIT_INTERNAL


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="kovacic3",
        description="Liouvillian solutions and differential Galois groups of third-order operators",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)
    for name in ("classify", "solve", "verify"):
        p = sub.add_parser(name)
        p.add_argument("operator", help="operator expression in z and Dz, or @file")
        p.add_argument("--format", choices=("text", "machine"), default="text")
        p.add_argument("--timeout", type=int, default=0, help="seconds (0 = none)")
        p.add_argument("--series-order", type=int, default=None)
        p.add_argument("--expand-at-singularity", action="store_true")
        p.add_argument("--classify-only", action="store_true")
        p.add_argument("--verify", action="store_true")
        p.add_argument("--no-long-tier", action="store_true")
    pc = sub.add_parser("corpus")
    pc.add_argument("fixture_dir")
    args = ap.parse_args(argv)

    if args.cmd == "corpus":
        return run_corpus(Path(args.fixture_dir))

    text = args.operator
    if text.startswith("@"):
        try:
            text = Path(text[1:]).read_text().strip()
        except OSError as exc:
            print(f"input error: {exc}", file=sys.stderr)
            return EXIT_INPUT
    if args.timeout:
        signal.signal(signal.SIGALRM, _raise_timeout)
        signal.alarm(args.timeout)
    try:
        L = parse_operator(text)
    except (ParseError, OrderError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        doc = run_pipeline(
            L,
            classify_only=(args.cmd == "classify" or args.classify_only),
            verify=(args.cmd == "verify" or args.verify),
            long_tier=not args.no_long_tier,
        )
    except TimeoutError:
        print("timeout", file=sys.stderr)
        return EXIT_INTERNAL
    except Kovacic3Error as exc:
        print(f"pipeline error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    finally:
        if args.timeout:
            signal.alarm(0)
    print(doc.to_json() if args.format == "machine" else doc.to_text())
    if doc.verification and not doc.verification["passed"]:
        return EXIT_INTERNAL
    if doc.classification in ("SO3", "SL3"):
        return EXIT_NO_LIOUVILLIAN
    return EXIT_OK


def _raise_timeout(_sig, _frm):
    raise TimeoutError


if __name__ == "__main__":
    raise SystemExit(main())
