"""Semi-invariant detection and evaluation.

The search follows the candidate-enumeration scheme: the hyperexponential
part of a degree-m order-r semi-invariant value is p(z)^(1/r) with
p = prod q_i^(r e_i), the e_i drawn from class representatives of the local
exponents in (1/r)Z.  For each candidate the exponential shift produces an
operator whose relevant solutions are plain rational functions; those are
found by series matching against degree bounds derived from local exponents.

Bounds never materialize big operators: the valuation of a rational solution
of the symmetric-power system is bounded below by integer-compatible sums of
m local exponents (derivative slots shift by -1/-2 at finite points, +1/+2
at infinity), with a Cauchy-style floor whenever some exponents are not
representable in a degree-<=2 field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product as iproduct

from .errors import MatchFailure, TruncationTooSmall
from .factorization import factor_uni, quadratic_field_of
from .localdata import (
    INFINITY,
    SingularPoint,
    ordinary_expansion_point,
    series_basis,
    singular_points,
)
from .rationals import QQ, as_qq, den, is_rat, num, qceil, qfrac, qq
from .ratfunc import RatFunc
from .scalars import QuadElt, join_field, s_conj, s_is_zero
from .series import Series, ratfunc_series_at
from .symmetric import monomial_series, multinom, sym_dim, sym_power_matrix, sym_vector_series, triples
from .unipoly import UniPoly

SERIES_SAFETY_MARGIN = 10


# ---------------------------------------------------------------------------
# candidate exponents and hyperexponential parts
# ---------------------------------------------------------------------------


@dataclass
class HyperexpCandidate:
    """p(z)^(1/r) candidate hyperexponential part.

    exps maps each finite singular factor (by index) to the chosen class
    representative in [0,1); for a split quadratic factor the value is a pair
    (rep at root, rep at conjugate root).
    """

    p: UniPoly
    r: int
    D: int | None  # quadratic field tag of p's coefficients
    exps: tuple
    split_factors: tuple = ()

    def conjugate(self) -> "HyperexpCandidate":
        exps = tuple(
            (e[1], e[0]) if isinstance(e, tuple) else e for e in self.exps
        )
        return HyperexpCandidate(self.p.conjugate(), self.r, self.D, exps, self.split_factors)

    def is_trivial(self) -> bool:
        return self.p.is_constant()


def candidate_exponent_sets(points: list[SingularPoint], r: int) -> list[list]:
    """[E_q]_r for each finite point: representatives in [0,1) of the rational
    local exponents with denominator dividing r."""
    out = []
    for pt in points:
        if pt.is_infinity:
            continue
        reps = set()
        for e in pt.exponents:
            if is_rat(e) and r % den(e) == 0:
                reps.add(qfrac(e))
        out.append(sorted(reps))
    return out


def enumerate_hyperexp_candidates(
    L, m: int, r: int, d: int, points: list[SingularPoint] | None = None
) -> list[HyperexpCandidate]:
    """All candidate parts p^(1/r), coefficients in a field of degree <= d.

    For d=2 a quadratic factor may be split over its root field, with the two
    conjugate roots carrying different representatives; candidates mixing two
    distinct quadratic fields are discarded.
    """
    if points is None:
        points = singular_points(L)
    finite = [pt for pt in points if not pt.is_infinity]
    per_factor: list[list] = []
    for pt in finite:
        reps = sorted(
            {qfrac(e) for e in pt.exponents if is_rat(e) and r % den(e) == 0}
        )
        if not reps:
            reps = []
        choices: list = [("plain", e) for e in reps]
        if d >= 2 and pt.location.degree == 2:
            for e1 in reps:
                for e2 in reps:
                    if e1 != e2:
                        choices.append(("split", (e1, e2)))
        per_factor.append(choices)
    if any(not ch for ch in per_factor):
        return []
    cands = []
    for combo in iproduct(*per_factor):
        D = None
        ok = True
        for pt, (kind, _e) in zip(finite, combo):
            if kind == "split":
                Dq = quadratic_field_of(pt.location)
                try:
                    D = join_field(D, Dq)
                except Exception:
                    ok = False
                    break
        if not ok:
            continue
        p = UniPoly.one(L.var)
        exps = []
        split_names = []
        for pt, (kind, e) in zip(finite, combo):
            q = pt.location
            if kind == "plain":
                exps.append(e)
                k = num(e * r)
                if k:
                    p = p * q**k
            else:
                exps.append(e)
                split_names.append(repr(q))
                l1, l2 = _split_linears(q)
                k1, k2 = num(e[0] * r), num(e[1] * r)
                if k1:
                    p = p * l1**k1
                if k2:
                    p = p * l2**k2
        cands.append(HyperexpCandidate(p=p, r=r, D=D, exps=tuple(exps), split_factors=tuple(split_names)))
    return cands


def _split_linears(q: UniPoly) -> tuple[UniPoly, UniPoly]:
    fac = factor_uni(q, allow_quad_ext=True)
    lins = [f for f, _ in fac if f.degree == 1]
    assert len(lins) == 2
    return lins[0], lins[1]


def splitting_field_candidate_count(L, m: int, r: int, points=None) -> int:
    """Number of candidates if a_3 were factored over its full splitting field:
    every root of every irreducible factor chooses its representative freely."""
    if points is None:
        points = singular_points(L)
    count = 1
    for pt in points:
        if pt.is_infinity:
            continue
        reps = {qfrac(e) for e in pt.exponents if is_rat(e) and r % den(e) == 0}
        count *= max(len(reps), 0) ** pt.location.degree
    return count


def hyperexp_part_candidate_count(L, splitting_field: bool = False, points=None) -> int:
    """Size of the hyperexponential-part candidate set in the style of the
    classical (Beke) enumeration: at every finite singular point each rational
    local-exponent class contributes one choice.  With splitting_field=True
    every conjugate root of each irreducible factor chooses independently —
    the count the degree-bound argument avoids."""
    if points is None:
        points = singular_points(L)
    count = 1
    for pt in points:
        if pt.is_infinity:
            continue
        reps = {qfrac(e) for e in pt.exponents if is_rat(e)}
        n = len(reps)
        count *= n ** pt.location.degree if splitting_field else n
    return count


def reduce_hyperexp_part(p: UniPoly, r: int) -> tuple[UniPoly, int]:
    """Cancel common content from the radical: p^(1/r) with p = prod q^(k_q)
    becomes (prod q^(k_q/g))^(1/(r/g)), g = gcd(r, all k_q)."""
    if p.is_constant():
        return UniPoly.one(p.var), 1
    g = r
    fac = factor_uni(p) if p.is_rational() else factor_uni_quad(p)
    for _f, k in fac:
        g = math.gcd(g, k)
    if g == 1:
        return p, r
    out = UniPoly.one(p.var)
    for f, k in fac:
        out = out * f ** (k // g)
    return out, r // g


def factor_uni_quad(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Factor a product of linears over a quadratic field (candidate parts only)."""
    out = []
    rem = p.monic()
    while rem.degree >= 1:
        # extract a root from the derivative-free structure: candidates are
        # products of known linears, so repeatedly peel gcd with conjugates.
        found = False
        for f, _ in factor_uni(UniPoly([c for c in (rem * rem.conjugate()).coeffs], rem.var)):
            if f.degree != 1:
                f_split = factor_uni(f, allow_quad_ext=True) if f.degree == 2 else []
                lins = [g for g, _ in f_split if g.degree == 1]
            else:
                lins = [f]
            for lin in lins:
                k = 0
                while True:
                    quo, rr = rem.divmod(lin)
                    if rr.is_zero():
                        rem = quo
                        k += 1
                    else:
                        break
                if k:
                    out.append((lin, k))
                    found = True
        if not found:
            out.append((rem, 1))
            break
    return out


# ---------------------------------------------------------------------------
# bounds for rational solutions
# ---------------------------------------------------------------------------


@dataclass
class RationalBound:
    """Every rational solution of the target operator is Q * q, deg q <= N."""

    Q: RatFunc
    N: int


def rational_bound(M) -> RationalBound | None:
    """Bound for rational solutions of an arbitrary operator from the integer
    roots of its indicial polynomials; None when no rational solution can
    exist."""
    pts = singular_points(M)
    Qnum = UniPoly.one(M.var)
    Qden = UniPoly.one(M.var)
    deg_shift = 0
    e_inf = None
    for pt in pts:
        ints = [e for e in pt.exponents if is_rat(e) and den(e) == 1]
        if pt.is_infinity:
            if not ints:
                return None
            e_inf = min(ints)
            continue
        if not ints:
            return None
        v = int(min(ints))
        if v > 0:
            Qnum = Qnum * pt.location**v
            deg_shift += v * pt.location.degree
        elif v < 0:
            Qden = Qden * pt.location ** (-v)
            deg_shift += v * pt.location.degree
    if e_inf is None:
        return None
    N = int(-deg_shift - e_inf)
    if N < 0:
        return None
    return RationalBound(Q=RatFunc(Qnum, Qden), N=N)


def _abs_upper(x):
    """Exact rational upper bound for |scalar|."""
    if is_rat(x):
        return abs(as_qq(x))
    root = math.isqrt(abs(x.D)) + 1
    return abs(x.a) + abs(x.b) * root


def _abs_lower(x):
    """Exact positive rational lower bound for |scalar| (x != 0)."""
    if is_rat(x):
        return abs(as_qq(x))
    if x.D < 0:
        return max(abs(x.a), abs(x.b))
    n = abs(x.norm())
    return n / _abs_upper(x)


def _exponent_floor(pt: SingularPoint):
    """Exact rational lower bound for the real part of every local exponent."""
    coeffs = pt.indicial_scalar
    if coeffs is None:
        coeffs = _norm_poly_coeffs(pt)
    top = coeffs[-1]
    bound = QQ(0)
    for c in coeffs[:-1]:
        bound = max(bound, _abs_upper(c))
    return -(1 + bound / _abs_lower(top))


def _norm_poly_coeffs(pt: SingularPoint) -> list:
    """Coefficients of the norm of a mod-q indicial (roots over all conjugates)."""
    import sympy

    lam = pt.indicial_modq
    t, y = sympy.symbols("t y")
    q = pt.location
    qs = sum(sympy.Rational(num(c), den(c)) * t**i for i, c in enumerate(q.coeffs))
    Is = 0
    for k, ck in enumerate(lam):
        cs = sum(sympy.Rational(num(c), den(c)) * t**i for i, c in enumerate(ck.coeffs))
        Is += cs * y**k
    res = sympy.resultant(sympy.Poly(qs, t), sympy.Poly(Is, t))
    poly = sympy.Poly(res, y)
    out = [QQ(0)] * (poly.degree() + 1)
    for (e,), c in poly.terms():
        out[e] = qq(int(c.p), int(c.q))
    return out


def _slot_sums(exponents: list, size: int, shift) -> set:
    """All sums of `size` exponents (with repetition), each shifted by `shift`."""
    sums = {QQ(0)}
    shifted = [e + shift for e in exponents]
    for _ in range(size):
        sums = {s + e for s in sums for e in shifted}
        if not sums:
            break
    return sums


def monomial_bound(points: list[SingularPoint], mvec) -> RationalBound | None:
    """[Q, N] bound for rational solutions spanned by monomials of shape mvec
    (m1 plain solutions, m2 first derivatives, m3 second derivatives)."""
    m1, m2, m3 = mvec
    m = m1 + m2 + m3
    var = "z"
    Qnum = UniPoly.one(var)
    Qden = UniPoly.one(var)
    deg_shift = 0
    e_inf = None
    for pt in points:
        if not pt.is_infinity and pt.location.degree >= 1:
            var = pt.location.var
    for pt in points:
        s1 = QQ(1) if pt.is_infinity else QQ(-1)  # derivative exponent shift
        shifts = (QQ(0), s1, 2 * s1)
        cands = []
        sums = {QQ(0)}
        for size, sh in zip((m1, m2, m3), shifts):
            if size:
                part = _slot_sums(pt.exponents, size, sh)
                sums = {a + b for a in sums for b in part}
        rat = [s for s in sums if is_rat(s)]
        if rat:
            cands.append(min(rat))
        if not pt.exponents_complete:
            lo = _exponent_floor(pt)
            cands.append(m1 * lo + m2 * (lo + s1) + m3 * (lo + 2 * s1))
        if not cands:
            return None
        v = qceil(min(cands))
        if pt.is_infinity:
            e_inf = v
        else:
            if v > 0:
                Qnum = Qnum * pt.location ** int(v)
            elif v < 0:
                Qden = Qden * pt.location ** int(-v)
            deg_shift += int(v) * pt.location.degree
    if e_inf is None:
        return None
    N = int(-deg_shift - e_inf)
    if N < 0:
        return None
    return RationalBound(Q=RatFunc(Qnum, Qden), N=N)


# ---------------------------------------------------------------------------
# linear algebra over the scalar field
# ---------------------------------------------------------------------------


def nullspace(rows: list[list], ncols: int) -> list[list]:
    """Basis of the right nullspace of the row-list matrix (scalar entries)."""
    from .scalars import s_div

    mat = [list(r) for r in rows]
    pivots = {}  # col -> row index
    rank_rows = []
    for r in mat:
        # reduce by existing pivots
        for c, pr in pivots.items():
            coef = r[c]
            if not s_is_zero(coef):
                prow = rank_rows[pr]
                for j in range(ncols):
                    pv = prow[j]
                    if not s_is_zero(pv):
                        r[j] = r[j] - coef * pv
        lead = None
        for j in range(ncols):
            if not s_is_zero(r[j]):
                lead = j
                break
        if lead is None:
            continue
        inv = s_div(QQ(1), r[lead])
        r = [x * inv for x in r]
        rank_rows.append(r)
        pivots[lead] = len(rank_rows) - 1
    # back substitution to reduced echelon
    for c, pr in sorted(pivots.items(), reverse=True):
        prow = rank_rows[pr]
        for c2, pr2 in pivots.items():
            if pr2 == pr or c2 >= c:
                continue
            row2 = rank_rows[pr2]
            coef = row2[c]
            if not s_is_zero(coef):
                for j in range(c, ncols):
                    pv = prow[j]
                    if not s_is_zero(pv):
                        row2[j] = row2[j] - coef * pv
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        vec = [QQ(0)] * ncols
        vec[f] = QQ(1)
        for c, pr in pivots.items():
            vec[c] = -rank_rows[pr][f]
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------
# rational solutions by series matching
# ---------------------------------------------------------------------------


def rational_solutions(
    L0, m: int, basis, bound: RationalBound, rows: int | None = None
) -> list[list]:
    """Constant vectors C_o with sum C_j * mono_j(y) = Q(z) q(z), deg q <= N.

    mono_j are the degree-m monomials of the basis series against the
    normalized monomial basis X^t/multinom(t); returns a basis of the C_o
    solution space.
    """
    mono = monomial_series(basis, m)
    nmono = len(mono)
    nq = bound.N + 1
    qs = ratfunc_series_at(bound.Q, basis.z0, basis.trunc)
    ram = max(s.ram for s in mono)
    qs = qs.with_ram(ram)
    mono = [s.with_ram(ram) for s in mono]
    usable = min(min(s.prec for s in mono), qs.prec)
    lo = min(min((s.off for s in mono), default=0), qs.off)
    if rows is None:
        rows = usable - lo
    need = nmono + nq + 2
    if rows < need:
        raise TruncationTooSmall(f"{rows} matching rows < {need} needed")
    out_rows = []
    for k in range(lo, min(usable, lo + rows)):
        row = []
        for s in mono:
            i = k - s.off
            row.append(s.coeffs[i] if 0 <= i < len(s.coeffs) else QQ(0))
        for t in range(nq):
            # coefficient of x^k in Q * x^t (exponent t in integer units)
            i = k - qs.off - t * ram
            row.append(-(qs.coeffs[i]) if 0 <= i < len(qs.coeffs) else QQ(0))
        out_rows.append(row)
    sols = nullspace(out_rows, nmono + nq)
    return [v[:nmono] for v in sols]


# ---------------------------------------------------------------------------
# the semi-invariant search
# ---------------------------------------------------------------------------


@dataclass
class SemiInvariantWitness:
    """Coefficient vector against X^t/multinom(t) plus hyperexponential part.

    The frame is the delta-normalized basis of L at z0 (common to every
    witness of one search), so vectors from different hyperexponential parts
    can be combined.  The witness certifies that the full vector
    Sym^m(Y) C_o equals (p/p(z0))^(1/r) times a rational vector.
    """

    c_o: list
    m: int
    r: int  # reduced order of the radical
    p: UniPoly  # reduced: value is (p/p(z0))^(1/r) * rational
    D: int | None
    z0: object
    value: RatFunc = None  # first-entry rational part
    candidate: HyperexpCandidate = None

    def poly(self):
        """The semi-invariant as a MultiPoly in X1, X2, X3."""
        from .multipoly import MultiPoly

        ts = triples(self.m)
        return MultiPoly(
            {t: self.c_o[i] * qq(1, multinom(self.m, t)) for i, t in enumerate(ts)}, 3
        )


def shifted_operator(L, p: UniPoly, r: int, m: int):
    """Operator satisfied by y * p^(-1/(rm)): removes the radical part."""
    if p.is_constant():
        return L
    g = RatFunc(p.derivative(), p * QQ(r * m))
    return L.exp_shift(g)


def unit_power_series(p: UniPoly, z0, alpha, T: int) -> Series:
    """Series of (p(z)/p(z0))**alpha at z0 (principal branch, value 1)."""
    ps = ratfunc_series_at(RatFunc(p, UniPoly.const(p.eval(z0), p.var)), z0, T)
    return ps.rational_power(alpha)


def _mg_matrix_at(p: UniPoly, r: int, m: int, z0):
    """C_h / h for h = (p/p(z0))^(-1/(rm)), evaluated at z0 (3x3 scalars)."""
    g = RatFunc(p.derivative(), p * QQ(-r * m))  # logder of h
    g0 = g.eval(z0)
    g1 = g.derivative().eval(z0) + g0 * g0
    return [
        [QQ(1), QQ(0), QQ(0)],
        [g0, QQ(1), QQ(0)],
        [g1, 2 * g0, QQ(1)],
    ]


def _sym_apply(S, vec):
    out = []
    for row in S:
        acc = QQ(0)
        for c, v in zip(row, vec):
            if not s_is_zero(c) and not s_is_zero(v):
                acc = acc + c * v
        out.append(acc)
    return out


def semi_invariants(
    L,
    m: int,
    r: int,
    d: int,
    z0=None,
    margin: int = SERIES_SAFETY_MARGIN,
    points=None,
    collect_evidence: dict | None = None,
    basis=None,
) -> list[SemiInvariantWitness]:
    """All degree-m semi-invariants of order dividing r with hyperexponential
    part over a field of degree <= d; pairs (C_o, p^(1/r)).

    A vector is accepted only if every entry of Sym^m(Y) C_o matches
    p^(1/r) * rational within its bound (the full-vector condition); C_o
    combinations whose value vector fails it are discarded.
    """
    if points is None:
        points = singular_points(L)
    if z0 is None:
        z0 = ordinary_expansion_point(L)
    cands = enumerate_hyperexp_candidates(L, m, r, d, points=points)
    if collect_evidence is not None:
        collect_evidence["candidates"] = len(cands)
        collect_evidence["probe"] = (m, r, d)
    finite_factors = [pt.location for pt in points if not pt.is_infinity]
    # precompute shifted-operator data and bounds per candidate
    prepared = []
    T_needed = 3
    nmono = sym_dim(m)
    for cand in cands:
        Lp = shifted_operator(L, cand.p, cand.r, m)
        pts_p = singular_points(Lp, factor_hints=_shift_hints(finite_factors, cand))
        # bound None means the first row can only vanish identically; such
        # candidates still carry hyperexponential vectors (zero-value
        # semi-invariants whose payload sits in the derivative rows)
        bound = monomial_bound(pts_p, (m, 0, 0))
        prepared.append((cand, Lp, pts_p, bound))
        T_needed = max(T_needed, nmono + (bound.N if bound else 0) + margin)
    if not prepared:
        return []
    if basis is None or basis.trunc < T_needed or basis.z0 != z0:
        basis = series_basis(L, z0, T_needed)
    mono = monomial_series(basis, m)
    out = []
    done = {}
    for cand, Lp, pts_p, bound in prepared:
        key = repr(cand.p.conjugate())
        if key in done:
            for w in done[key]:
                out.append(
                    SemiInvariantWitness(
                        c_o=[s_conj(c) for c in w.c_o],
                        m=m,
                        r=w.r,
                        p=w.p.conjugate(),
                        D=w.D,
                        z0=z0,
                        value=_conj_ratfunc(w.value),
                        candidate=cand,
                    )
                )
            continue
        ws = _solve_candidate(L, cand, Lp, pts_p, bound, m, z0, margin, mono)
        done[repr(cand.p)] = ws
        out.extend(ws)
    return out


def _conj_ratfunc(rf):
    if rf is None:
        return None
    return RatFunc(rf.num.conjugate(), rf.den.conjugate())


def _shift_hints(finite_factors, cand: HyperexpCandidate):
    hints = []
    for q in finite_factors:
        if repr(q) in cand.split_factors:
            l1, l2 = _split_linears(q)
            hints.extend([l1, l2])
        else:
            hints.append(q)
    return hints


def _solve_candidate(L, cand, Lp, pts_p, bound, m, z0, margin, mono) -> list[SemiInvariantWitness]:
    """First-row match in the common frame, then full-vector refinement.

    bound None restricts the first row to vanish identically (kernel mode)."""
    T = mono[0].prec
    nmono = len(mono)
    if bound is not None:
        nq = bound.N + 1
        qs = ratfunc_series_at(bound.Q, z0, T)
        if not cand.is_trivial():
            # condition: sum C_j mono_j(y) = Q * q * (p/p(z0))^(1/r)
            qs = qs * unit_power_series(cand.p, z0, qq(1, cand.r), T)
    else:
        nq = 0
        qs = None
    rows = []
    usable = min(s.prec for s in mono)
    if qs is not None:
        usable = min(usable, qs.prec)
    for k in range(usable):
        row = []
        for s in mono:
            i = k - s.off
            row.append(s.coeffs[i] if 0 <= i < len(s.coeffs) else QQ(0))
        for t in range(nq):
            i = k - qs.off - t
            row.append(-(qs.coeffs[i]) if 0 <= i < len(qs.coeffs) else QQ(0))
        rows.append(row)
    if usable < nmono + nq + 2:
        raise TruncationTooSmall(f"{usable} rows < {nmono + nq + 2}")
    space = [v[:nmono] for v in nullspace(rows, nmono + nq)]
    if not space:
        return []
    space = _full_vector_refine(Lp, pts_p, cand, m, z0, margin, space)
    p_red, r_red = reduce_hyperexp_part(cand.p, cand.r)
    ws = []
    for cv, val in space:
        ws.append(
            SemiInvariantWitness(
                c_o=cv, m=m, r=r_red, p=p_red, D=cand.D, z0=z0, value=val,
                candidate=cand,
            )
        )
    return ws


def _full_vector_refine(Lp, pts_p, cand, m, z0, margin, space):
    """Restrict a candidate C_o space to vectors whose full Sym^m(Y)C_o
    vector is p^(1/r) * rational; returns [(C_o, first-entry value)]."""
    ts = triples(m)
    bounds = []
    maxN = 0
    for t in ts:
        b = monomial_bound(pts_p, t)
        bounds.append(b)  # None: the row is constrained to vanish
        if b is not None:
            maxN = max(maxN, b.N)
    T2 = maxN + 3 - 1 + margin
    Mg = _mg_matrix_at(cand.p, cand.r, m, z0) if not cand.is_trivial() else None
    Fs = []
    for v in space:
        if Mg is not None:
            vinit = _sym_apply(sym_power_matrix(Mg, m), v)
        else:
            vinit = list(v)
        Fs.append(sym_vector_series(Lp, m, vinit, z0, T2))
    # coordinates t_a on the space; intersect row conditions
    k = len(space)
    coords = [[QQ(1) if i == j else QQ(0) for j in range(k)] for i in range(k)]
    for i, t in enumerate(ts):
        if not coords:
            return []
        b = bounds[i]
        if b is not None:
            qs = ratfunc_series_at(b.Q, z0, T2)
            nq = b.N + 1
        else:
            qs = None
            nq = 0
        cols = len(coords) + nq
        rows = []
        for kk in range(T2 if qs is None else min(T2, qs.prec)):
            row = []
            for cvec in coords:
                acc = QQ(0)
                for a in range(k):
                    if not s_is_zero(cvec[a]):
                        s = Fs[a][i]
                        idx = kk - s.off
                        if 0 <= idx < len(s.coeffs):
                            acc = acc + cvec[a] * s.coeffs[idx]
                row.append(acc)
            for tt in range(nq):
                idx = kk - qs.off - tt
                row.append(-(qs.coeffs[idx]) if 0 <= idx < len(qs.coeffs) else QQ(0))
            rows.append(row)
        ns = nullspace(rows, cols)
        new_coords = []
        for v in ns:
            tpart = v[: len(coords)]
            if all(s_is_zero(x) for x in tpart):
                continue
            combo = [QQ(0)] * k
            for c, cvec in zip(tpart, coords):
                if not s_is_zero(c):
                    for a in range(k):
                        combo[a] = combo[a] + c * cvec[a]
            new_coords.append(combo)
        coords = new_coords
    out = []
    for cvec in coords:
        c_o = [QQ(0)] * len(space[0])
        for a, c in enumerate(cvec):
            if not s_is_zero(c):
                for j in range(len(c_o)):
                    c_o[j] = c_o[j] + c * space[a][j]
        # first-entry value: recompute from the refined vector
        F0 = None
        for a, c in enumerate(cvec):
            if not s_is_zero(c):
                t0 = Fs[a][0] * c
                F0 = t0 if F0 is None else F0 + t0
        val = _match_row(F0, bounds[0], z0, ts[0]) if F0 is not None else None
        out.append((c_o, val))
    return out


# ---------------------------------------------------------------------------
# values of a semi-invariant: F = Sym^m(Y) C_o
# ---------------------------------------------------------------------------


@dataclass
class SemiInvariantValues:
    """Entries of Sym^m(Y) C_o as (p/p(z0))^(1/r) * rational function.

    entries[k] is the rational part of F_{k+1}; restricted mode stores the
    first m+1 entries (the X3-free block), full mode all N.  The radical is
    normalized to value 1 at the expansion point; the overall constant is
    immaterial because witnesses are only defined up to scale.
    """

    p: UniPoly
    r: int
    m: int
    entries: list
    restricted: bool

    def first(self) -> RatFunc:
        return self.entries[0]


def values_of_semi_invariant(
    L, m: int, r: int, z0, c_o: list, p: UniPoly, restrict: bool = True,
    margin: int = SERIES_SAFETY_MARGIN,
) -> SemiInvariantValues:
    """Evaluate F = Sym^m(Y) C_o in the closed form p^(1/r) * rational.

    Y is the Wronskian of the delta-normalized basis of L at z0 (the frame
    semi_invariants reports witnesses in).
    """
    Lp = shifted_operator(L, p, r, m)
    pts_p = singular_points(Lp)
    ts = triples(m)
    n_total = len(ts)
    trivial = p.is_constant()
    bounds = []
    maxN = 0
    for t in ts:
        b = monomial_bound(pts_p, t)
        bounds.append(b)  # None: the entry must vanish identically
        if b is not None:
            maxN = max(maxN, b.N)
    T = maxN + 3 - 1 + margin
    if trivial:
        vinit = list(c_o)
    else:
        vinit = _sym_apply(sym_power_matrix(_mg_matrix_at(p, r, m, z0), m), c_o)
    F = sym_vector_series(Lp, m, vinit, z0, T)
    want = range(m + 1) if restrict else range(n_total)
    tilde = [_match_row(F[i], bounds[i], z0, ts[i]) for i in want]
    if trivial:
        return SemiInvariantValues(p=UniPoly.one(L.var), r=1, m=m, entries=tilde, restricted=restrict)
    # back-transform: F_true = Sym^m(C_h) F_tilde with h = (p/p(z0))^(1/(rm))
    g = RatFunc(p.derivative(), p * QQ(r * m))
    one = RatFunc.one(L.var)
    zero = RatFunc.zero(L.var)
    if restrict:
        S = sym_power_matrix([[one, zero], [g, one]], m, arity=2)
    else:
        S = sym_power_matrix(
            [[one, zero, zero], [g, one, zero], [g.derivative() + g * g, 2 * g, one]],
            m,
            arity=3,
        )
    ent = []
    for i in range(len(S)):
        acc = RatFunc.zero(L.var)
        for j in range(len(S)):
            sij = S[i][j]
            if isinstance(sij, RatFunc):
                if not sij.is_zero():
                    acc = acc + sij * tilde[j]
            elif not s_is_zero(sij):
                acc = acc + tilde[j] * sij
        ent.append(acc)
    return SemiInvariantValues(p=p, r=r, m=m, entries=ent, restricted=restrict)


def _match_row(series_F: Series, bound: RationalBound, z0, tag) -> RatFunc:
    """Recover the rational function Q*q from its series; certify the tail.

    bound None asserts the row vanishes identically."""
    if series_F.is_zero():
        return RatFunc.zero("z")
    if bound is None:
        raise MatchFailure(f"row {tag}: must vanish but does not")
    qs = ratfunc_series_at(bound.Q, z0, series_F.prec)
    ratio = series_F * qs.inverse()
    if ratio.prec < bound.N + 1:
        raise TruncationTooSmall(f"row {tag}: precision {ratio.prec} < {bound.N + 1}")
    if ratio.off < 0:
        raise MatchFailure(f"row {tag}: negative valuation after Q division")
    top = ratio.max_nonzero_exponent_below(ratio.prec)
    if top is not None and top > bound.N:
        raise MatchFailure(
            f"row {tag}: series does not match a polynomial of degree <= {bound.N}"
        )
    coeffs = [QQ(0)] * (bound.N + 1)
    for k in range(ratio.off, min(ratio.prec, bound.N + 1)):
        coeffs[k] = ratio[k]
    qpoly = UniPoly(coeffs, "z").shift(-as_qq(z0))
    return bound.Q * qpoly


def rational_solutions(L0, m: int, basis, bound: RationalBound) -> list[list]:
    """Constant vectors C_o with sum C_j mono_j(y) = Q(z) q(z), deg q <= N
    (first-row matching only; the full search applies the vector refinement)."""
    mono = monomial_series(basis, m)
    nmono = len(mono)
    nq = bound.N + 1
    qs = ratfunc_series_at(bound.Q, basis.z0, basis.trunc)
    ram = max(s.ram for s in mono)
    qs = qs.with_ram(ram)
    mono = [s.with_ram(ram) for s in mono]
    usable = min(min(s.prec for s in mono), qs.prec)
    lo = min(min((s.off for s in mono), default=0), qs.off)
    if usable - lo < nmono + nq + 2:
        raise TruncationTooSmall(f"{usable - lo} matching rows < {nmono + nq + 2} needed")
    rows = []
    for k in range(lo, usable):
        row = []
        for s in mono:
            i = k - s.off
            row.append(s.coeffs[i] if 0 <= i < len(s.coeffs) else QQ(0))
        for t in range(nq):
            i = k - qs.off - t * ram
            row.append(-(qs.coeffs[i]) if 0 <= i < len(qs.coeffs) else QQ(0))
        rows.append(row)
    sols = nullspace(rows, nmono + nq)
    return [v[:nmono] for v in sols]
