"""Reducibility test and the order-3 Kovacic-style decision cascade.

The cascade runs on the sub-leading-free operator L0: a nonempty degree-3
order-2 search means imprimitive; otherwise the primitive groups are told
apart by which degree/order searches are nonempty and how many independent
witnesses they carry.  Reducible operators short-circuit before the cascade;
an irregular L0 yields the no-Liouvillian verdict directly.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import product as iproduct

from .errors import LogarithmicSolution
from .localdata import (
    is_fuchsian,
    ordinary_expansion_point,
    singular_points,
)
from .radicals import Prefactor, prefactor_from
from .rationals import QQ, den, ilcm, is_rat, qfrac, qq
from .ratfunc import RatFunc
from .semiinv import (
    HyperexpCandidate,
    _shift_hints,
    enumerate_hyperexp_candidates,
    monomial_bound,
    nullspace,
    reduce_hyperexp_part,
    semi_invariants,
    shifted_operator,
)
from .localdata import series_basis
from .series import ratfunc_series_at
from .unipoly import UniPoly

PEEL_DEPTH = 8


# ---------------------------------------------------------------------------
# hyperexponential solutions / first-order right factors
# ---------------------------------------------------------------------------


@dataclass
class FirstOrderFactor:
    """Hyperexponential solution y = exp(int g): a first-order right factor Dz - g."""

    logder: RatFunc
    p: UniPoly  # radical part p^(1/r)
    r: int
    value: RatFunc  # rational part
    poly_part: UniPoly  # from exponential parts exp(int c z^k) at infinity

    def describe(self) -> str:
        s = []
        if not self.poly_part.is_zero():
            s.append(f"exp({self.poly_part})")
        if not self.p.is_constant():
            s.append(f"({self.p})^(1/{self.r})")
        s.append(f"({self.value})")
        return " * ".join(s)


def _radical_candidates_m1(L, d: int, points=None):
    """Candidate radical parts for hyperexponential solutions: every rational
    local exponent's fractional part at every finite singular point."""
    if points is None:
        points = singular_points(L)
    finite = [pt for pt in points if not pt.is_infinity]
    per = []
    for pt in finite:
        reps = sorted({qfrac(e) for e in pt.exponents if is_rat(e)})
        choices = [("plain", e) for e in reps]
        if d >= 2 and pt.location.degree == 2:
            for e1 in reps:
                for e2 in reps:
                    if e1 != e2:
                        choices.append(("split", (e1, e2)))
        per.append((pt, choices))
    if any(not c for _pt, c in per):
        return []
    out = []
    for combo in iproduct(*[c for _pt, c in per]):
        r = 1
        for kind, e in combo:
            if kind == "plain":
                r = ilcm(r, den(e))
            else:
                r = ilcm(r, ilcm(den(e[0]), den(e[1])))
        p = UniPoly.one(L.var)
        split_names = []
        ok = True
        D = None
        for (pt, _), (kind, e) in zip(per, combo):
            q = pt.location
            if kind == "plain":
                k = int(e * r)
                if k:
                    p = p * q**k
            else:
                from .factorization import quadratic_field_of
                from .scalars import join_field
                from .semiinv import _split_linears

                try:
                    D = join_field(D, quadratic_field_of(q))
                except Exception:
                    ok = False
                    break
                l1, l2 = _split_linears(q)
                k1, k2 = int(e[0] * r), int(e[1] * r)
                if k1:
                    p = p * l1**k1
                if k2:
                    p = p * l2**k2
                split_names.append(repr(q))
        if ok:
            out.append(HyperexpCandidate(p=p, r=r, D=D, exps=tuple(e for _k, e in combo), split_factors=tuple(split_names)))
    return out


def hyperexponential_solutions(L, d: int = 1, margin: int = 10) -> list[FirstOrderFactor]:
    """Hyperexponential solutions with radical parts from local exponents.

    Exponential parts exp(int c z^k) at an irregular infinity are peeled off
    through the Newton polygon (integer slopes, rational leading terms,
    depth-limited) before the radical search; essential exponential parts at
    finite points are out of the searched class.
    """
    out = []
    seen = set()
    _peel_infinity(L, UniPoly.zero(L.var), PEEL_DEPTH, d, margin, out, seen)
    return out


def _peel_infinity(L, gpoly: UniPoly, depth: int, d: int, margin: int, out, seen):
    _radical_search(L, gpoly, d, margin, out, seen)
    if depth <= 0:
        return
    n = L.order
    degs = [(i, L.coeff(i).degree) for i in range(n + 1) if not L.coeff(i).is_zero()]
    if len(degs) < 2:
        return
    kmax = None
    for i, di in degs:
        if i == n:
            continue
        dn = L.coeff(n).degree
        k = qq(int(di - dn), n - i)
        kmax = k if kmax is None else max(kmax, k)
    if kmax is None or kmax < 0:
        return
    if den(kmax) != 1:
        # ramified slope: algebraic exponential part, outside the class
        kmax = qq(int(kmax) if kmax > 0 else 0, 1)
    for k in range(int(kmax), -1, -1):
        # balance for g ~ c z^k: maximize deg a_i + i*k
        best = max(di + i * k for i, di in degs)
        J = [(i, di) for i, di in degs if di + i * k == best]
        if len(J) < 2 or all(i == J[0][0] for i, _ in J):
            continue
        cs = [QQ(0)] * (n + 1)
        for i, _di in J:
            cs[i] = L.coeff(i).lc()
        char = UniPoly(cs, "c")
        from .factorization import rational_roots

        for c in rational_roots(char):
            if c == 0:
                continue
            g0 = UniPoly.monomial(c, k, L.var)
            L2 = L.exp_shift(RatFunc(g0))
            _peel_infinity(L2, gpoly + _antideriv(g0), depth - 1, d, margin, out, seen)


def _antideriv(p: UniPoly) -> UniPoly:
    cs = [QQ(0)]
    for i, c in enumerate(p.coeffs):
        cs.append(c / (i + 1))
    return UniPoly(cs, p.var)


def _radical_search(L, gpoly: UniPoly, d: int, margin: int, out, seen):
    points = singular_points(L)
    cands = _radical_candidates_m1(L, d, points=points)
    if not cands:
        return
    z0 = ordinary_expansion_point(L)
    finite_factors = [pt.location for pt in points if not pt.is_infinity]
    basis = None
    for cand in cands:
        Lp = shifted_operator(L, cand.p, cand.r, 1)
        pts_p = singular_points(Lp, factor_hints=_shift_hints(finite_factors, cand))
        bound = monomial_bound(pts_p, (1, 0, 0))
        if bound is None:
            continue
        T = 3 + bound.N + margin
        if basis is None or basis.trunc < T:
            basis = series_basis(L, z0, T)
        from .semiinv import unit_power_series

        qs = ratfunc_series_at(bound.Q, z0, basis.trunc)
        if not cand.is_trivial():
            qs = qs * unit_power_series(cand.p, z0, qq(1, cand.r), basis.trunc)
        rows = []
        usable = min(min(s.prec for s in basis.series), qs.prec)
        nq = bound.N + 1
        for kk in range(usable):
            row = []
            for s in basis.series:
                i = kk - s.off
                row.append(s.coeffs[i] if 0 <= i < len(s.coeffs) else QQ(0))
            for t in range(nq):
                i = kk - qs.off - t
                row.append(-(qs.coeffs[i]) if 0 <= i < len(qs.coeffs) else QQ(0))
            rows.append(row)
        for v in nullspace(rows, 3 + nq):
            cvec, qvec = v[:3], v[3:]
            from .unipoly import UniPoly as UP

            qpoly_x = UP(list(qvec), L.var)
            if qpoly_x.is_zero():
                continue
            from .rationals import as_qq

            value = bound.Q * qpoly_x.shift(-as_qq(z0))
            p_red, r_red = reduce_hyperexp_part(cand.p, cand.r)
            logder = value.derivative() / value
            if not p_red.is_constant():
                logder = logder + RatFunc(p_red.derivative(), p_red * QQ(r_red))
            if not gpoly.is_zero():
                logder = logder + RatFunc(gpoly.derivative())
            key = repr(logder)
            if key in seen:
                continue
            seen.add(key)
            out.append(
                FirstOrderFactor(
                    logder=logder, p=p_red, r=r_red, value=value, poly_part=gpoly
                )
            )


def first_order_right_factors(L, d: int = 1) -> list[FirstOrderFactor]:
    return hyperexponential_solutions(L, d=d)


@dataclass
class ReducibilityEvidence:
    right_factors: list
    left_factors: list

    @property
    def reducible(self) -> bool:
        return bool(self.right_factors or self.left_factors)

    def liouvillian_dimension_note(self) -> str:
        if self.right_factors and self.left_factors:
            return "both-sided factors found; full Liouvillian basis needs the order-2 completion"
        if self.right_factors:
            return "L = L2*L1: at least a 1-dimensional Liouvillian space (the right factor's solution)"
        return "L = L1*L2: Liouvillian dimension 0 unless the order-2 factor is solvable (not computed)"


def reducibility_test(L, d: int = 1) -> ReducibilityEvidence | None:
    right = first_order_right_factors(L, d=d)
    left = first_order_right_factors(L.adjoint(), d=d)
    ev = ReducibilityEvidence(right_factors=right, left_factors=left)
    return ev if ev.reducible else None


# ---------------------------------------------------------------------------
# the decision cascade
# ---------------------------------------------------------------------------

TAG_REDUCIBLE = "Reducible"
TAG_IMPRIMITIVE = "Imprimitive"
TAG_A5 = "A5class"
TAG_SO3 = "SO3"
TAG_F36 = "F36"
TAG_G168 = "G168class"
TAG_H72 = "H72"
TAG_A6 = "A6"
TAG_H216 = "H216"
TAG_SL3 = "SL3"


@dataclass
class GaloisClassification:
    tag: str
    evidence: list = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    L0: object = None
    prefactor: Prefactor | None = None
    reducibility: ReducibilityEvidence | None = None

    @property
    def has_liouvillian(self) -> bool:
        return self.tag not in (TAG_SO3, TAG_SL3)


def classify_galois_group(L, d_policy: int = 1, z0=None, collect=None) -> GaloisClassification:
    """Full decision tree on the reduced operator; reducible short-circuits."""
    red = reducibility_test(L)
    if red is not None:
        return GaloisClassification(tag=TAG_REDUCIBLE, reducibility=red)
    L0, g0 = L.remove_subleading()
    pref = prefactor_from(-g0) if not g0.is_zero() else prefactor_from(RatFunc.zero(L.var))
    out = GaloisClassification(tag=TAG_SL3, prefactor=pref)
    out.L0 = L0
    if not is_fuchsian(L0):
        out.notes.append("irregular singularity: no Liouvillian solutions (irreducible case)")
        out.evidence.append({"probe": "fuchsian-gate", "result": "irregular"})
        return out
    if z0 is None:
        z0 = ordinary_expansion_point(L0)

    def probe(name, m, r, d):
        ev = {}
        t0 = time.perf_counter()
        try:
            ws = semi_invariants(L0, m, r, d, z0=z0, collect_evidence=ev)
        except LogarithmicSolution as exc:
            out.notes.append(f"logarithmic solution during {name}: {exc}")
            ws = []
        ev["name"] = name
        ev["witnesses"] = len(ws)
        ev["seconds"] = round(time.perf_counter() - t0, 6)
        out.evidence.append(ev)
        out.witnesses[name] = ws
        return ws

    B3 = probe("B3(m=3,r=2,d=2)", 3, 2, 2)
    if B3:
        out.tag = TAG_IMPRIMITIVE
        return out
    B2 = probe("B2(m=2,r=3,d=1)", 2, 3, 1)
    if B2:
        B6 = probe("B6(m=6,r=1,d=1)", 6, 1, 1)
        out.tag = TAG_SO3 if len(B6) == 1 else TAG_A5
        if out.tag == TAG_SO3:
            out.notes.append("no Liouvillian solutions (infinite orthogonal group)")
        return out
    B3b = probe("B3(m=3,r=4,d=2)", 3, 4, 2)
    if B3b:
        out.tag = TAG_F36
        return out
    B4 = probe("B4(m=4,r=3,d=1)", 4, 3, 1)
    if B4:
        out.tag = TAG_G168
        return out
    B6 = probe("B6(m=6,r=2,d=1)", 6, 2, 1)
    if len(B6) > 1:
        out.tag = TAG_H72
        return out
    if len(B6) == 1:
        out.tag = TAG_A6
        return out
    B6b = probe("B6(m=6,r=3,d=1)", 6, 3, 1)
    if B6b:
        out.tag = TAG_H216
        return out
    out.notes.append("no semi-invariants found: generic SL3, no Liouvillian solutions")
    return out


@dataclass
class SolutionSet:
    classification: GaloisClassification
    kind: str  # riccati | pullback | a5 | reducible | none
    riccati: object = None
    pullback: object = None
    a5: object = None
    prefactor: Prefactor | None = None
    notes: list = field(default_factory=list)


def kovacic_order3(L, d_policy: int = 1, long_tier: bool = True) -> SolutionSet:
    """Liouvillian solutions of an order-3 operator, per the decision tree."""
    from .pullbacks import pullback_solution, pullback_solution_a5

    cls = classify_galois_group(L, d_policy=d_policy)
    if cls.tag == TAG_REDUCIBLE:
        s = SolutionSet(classification=cls, kind="reducible")
        s.notes.append(cls.reducibility.liouvillian_dimension_note())
        s.notes.append("order-2 factor completion is out of scope")
        return s
    if cls.tag in (TAG_SO3, TAG_SL3):
        s = SolutionSet(classification=cls, kind="none", prefactor=cls.prefactor)
        s.notes.extend(cls.notes)
        return s
    if cls.tag == TAG_IMPRIMITIVE:
        from .riccati import riccati_solution_imprimitive

        R, w = riccati_solution_imprimitive(cls.L0, cls.witnesses.get("B3(m=3,r=2,d=2)"))
        s = SolutionSet(classification=cls, kind="riccati", prefactor=cls.prefactor)
        s.riccati = (R, w)
        s.notes.append("solutions: prefactor * exp(int w) for each root w of the Riccati polynomial")
        return s
    if cls.tag == TAG_A5:
        sol = pullback_solution_a5(cls)
        s = SolutionSet(classification=cls, kind="a5", prefactor=cls.prefactor)
        s.a5 = sol
        return s
    if not long_tier and cls.tag == TAG_A6:
        s = SolutionSet(classification=cls, kind="pullback", prefactor=cls.prefactor)
        s.notes.append("pullback construction deferred (long tier disabled)")
        return s
    sol = pullback_solution(cls)
    s = SolutionSet(classification=cls, kind="pullback", prefactor=cls.prefactor)
    s.pullback = sol
    return s
