"""Pullback solutions for the finite primitive groups.

Each constructor rebuilds the group's covariant chain from the detected
semi-invariant witness, fixes the free scalar(s) through the group's syzygy,
evaluates the needed gauge values Q_i(f) = P_i(y + f y'), picks the minimal
polynomial of f from the designated Q_i, and assembles the pullback map s(z)
and the gauge matrix C = C_f^(-1) C_h over K = k(z)[f]/(Qmin).

The radical prefactors of the gauge values always combine into integer powers
inside s (asserted), so s is a genuine element of K; C carries one explicit
radical h = w^(1/kh) with w in K.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, gcd

from .algfun import AlgElem, FunctionField
from .errors import (
    IrreducibleFactorNotFound,
    MatchFailure,
    SyzygyUnsatisfiable,
)
from .factorization import factor_in_f
from .hypergeom import Hypergeometric3F2
from .invtheory import (
    bordered_hessian,
    hessian_det,
    jacobian_det,
)
from .multipoly import MultiPoly
from .rationals import QQ, qq
from .ratfunc import RatFunc
from .scalars import QuadElt, is_rat, s_div, s_is_zero, sqrt_scalar
from .semiinv import (
    SemiInvariantWitness,
    semi_invariants,
    values_of_semi_invariant,
)
from .symmetric import multinom, triples
from .unipoly import UniPoly, poly_lcm


# ---------------------------------------------------------------------------
# gauge values
# ---------------------------------------------------------------------------


@dataclass
class GaugeValue:
    """Q(f) = radical * sum_k fcoeffs[k] f^k, radical = (p/p(z0))^(1/r)."""

    m: int
    r: int
    p: UniPoly
    fcoeffs: list  # RatFunc

    def radical_exponent(self):
        """Exponent of the unit radical (p/p(z0)) carried by the value."""
        return qq(1, self.r) if not self.p.is_constant() else QQ(0)

    def specialize_f0(self) -> RatFunc:
        return self.fcoeffs[0]

    def numerator_fpoly(self) -> list[UniPoly]:
        """Denominator-cleared coefficients against powers of f."""
        lcm = UniPoly.one("z")
        for c in self.fcoeffs:
            lcm = poly_lcm(lcm, c.den)
        return [c.num * lcm.exact_div(c.den) for c in self.fcoeffs]

    def in_field(self, K: FunctionField) -> AlgElem:
        return K.elt(list(self.fcoeffs))


def gauge_equivalent_value(L, poly: MultiPoly, m: int, r: int, p: UniPoly, z0,
                           restrict: bool = True) -> GaugeValue:
    """Q(f) = P(y1 + f y1', y2 + f y2', y3 + f y3') for a semi-invariant P."""
    ts = triples(m)
    c_o = [poly.coeff(t) * multinom(m, t) for t in ts]
    vals = values_of_semi_invariant(L, m, r, z0, c_o, p, restrict=True)
    fc = [vals.entries[k] * qq(1, comb(m, k)) for k in range(m + 1)]
    return GaugeValue(m=m, r=vals.r, p=vals.p, fcoeffs=fc)


# ---------------------------------------------------------------------------
# scalar normalization through the syzygies
# ---------------------------------------------------------------------------


def poly_ratio_scalar(A: MultiPoly, B: MultiPoly):
    """Scalar rho with A = rho * B; None when not proportional."""
    if B.is_zero():
        return None if not A.is_zero() else QQ(0)
    if A.is_zero():
        return QQ(0)
    e, c = next(iter(B.terms.items()))
    ac = A.terms.get(e)
    if ac is None:
        return None
    rho = s_div(ac, c)
    return rho if (A - B * rho).is_zero() else None


def solve_weight_scalar(terms: list) -> tuple[int, object]:
    """Solve sum coeff_t * a^(W_t) * M_t = 0 for the scalar a.

    terms: (coeff, weight, MultiPoly).  Returns (d, v) with a^d = v, d the
    gcd of weight differences.  Raises SyzygyUnsatisfiable when no nonzero
    scalar works.
    """
    wmin = min(w for _c, w, _m in terms)
    weights = sorted({w - wmin for _c, w, _m in terms})
    d = 0
    for w in weights:
        d = gcd(d, w)
    if d == 0:
        # single weight class: the identity must hold outright
        total = MultiPoly.zero(3)
        for c, _w, mpoly in terms:
            total = total + mpoly * c
        if total.is_zero():
            return 1, QQ(1)
        raise SyzygyUnsatisfiable("weightless syzygy fails")
    monos = set()
    for _c, _w, mpoly in terms:
        monos.update(mpoly.terms)
    from .unipoly import UniPoly as UP, poly_gcd

    g = None
    for e in sorted(monos):
        cs = [QQ(0)] * (max(weights) // d + 1)
        for c, w, mpoly in terms:
            mc = mpoly.terms.get(e)
            if mc is not None:
                cs[(w - wmin) // d] = cs[(w - wmin) // d] + c * mc
        pol = UP(cs, "u")
        if pol.is_zero():
            continue
        g = pol if g is None else poly_gcd(g, pol)
        if g.degree == 0:
            raise SyzygyUnsatisfiable("no common scalar solves the syzygy")
    if g is None or g.degree < 1:
        raise SyzygyUnsatisfiable("degenerate syzygy system")
    roots = _nonzero_roots_in_field(g)
    if not roots:
        raise SyzygyUnsatisfiable(f"scalar equation {g} has no usable root")
    return d, roots[0]


def _nonzero_roots_in_field(g):
    from .factorization import factor_uni
    from .localdata import _roots_in_scalars

    if g.is_rational():
        roots = []
        for f, _m in factor_uni(g):
            if f.degree == 1 and f[0] != 0:
                roots.append(-f[0])
        if roots:
            return roots
        # allow a quadratic-field root
        rts, _un, _c = _roots_in_scalars(list(g.coeffs), "u")
        return [r for r in rts if not s_is_zero(r)]
    rts, _un, _c = _roots_in_scalars(list(g.coeffs), "u")
    return [r for r in rts if not s_is_zero(r)]


# ---------------------------------------------------------------------------
# result containers
# ---------------------------------------------------------------------------


@dataclass
class PullbackSolution:
    group: str
    equation: Hypergeometric3F2
    K: FunctionField
    qmin: list  # UniPoly coefficients of the minimal polynomial of f
    s: AlgElem
    C: list  # 3x3 AlgElem (the rational-matrix part)
    h_base: AlgElem
    h_index: int
    notes: list = field(default_factory=list)

    def tag(self) -> str:
        return self.equation.tag()


@dataclass
class A5Solution:
    """Second-order operator with icosahedral group; Y = C Y0 with Y0 the
    Wronskian of y1^2, y1 y2, y2^2 for solutions y_i of the operator."""

    K: FunctionField
    qmin: list
    b: list  # [b0, b1, b2] third row of the gauged system, in K
    l0_coeffs: list  # [c0, c1] with L0 = Dz^2 + c1 Dz + c0 over K
    C: list  # 3x3 AlgElem
    notes: list = field(default_factory=list)


# ---------------------------------------------------------------------------
# shared assembly helpers
# ---------------------------------------------------------------------------


def _field_candidates(gv: GaugeValue, sqrt3: bool) -> list[tuple[FunctionField, list]]:
    """All irreducible factors of the numerator of the designated gauge value,
    smallest f-degree first; each defines a candidate function field.  The
    right factor is selected by the exact gauge-identity gate."""
    num = gv.numerator_fpoly()
    if all(c.is_zero() for c in num[1:]):
        raise IrreducibleFactorNotFound("gauge value is independent of f")
    factors = factor_in_f(num, sqrt3=sqrt3)
    if not factors:
        raise IrreducibleFactorNotFound("numerator has no nonconstant factor in f")
    key = lambda fc: (len(fc), max(c.degree for c in fc if not c.is_zero()), repr([repr(c) for c in fc]))
    out = []
    for qmin in sorted(factors, key=key):
        out.append((FunctionField([RatFunc(c) for c in qmin]), qmin))
    return out


def gauge_identity_holds(L, sol: "PullbackSolution") -> bool:
    """Exact check of (h'/h) C + C' + s' C A0(s) = A C over K."""
    K = sol.K
    C = sol.C
    w = sol.h_base
    hlog = w.derivative() * w.inverse() * qq(1, sol.h_index)
    A = L.companion()
    A_K = [[K.from_rat(A[i][j]) for j in range(3)] for i in range(3)]
    E = sol.equation.operator()
    A0 = E.companion()
    A0_s = [[_rat_at_algelem(A0[i][j], sol.s) for j in range(3)] for i in range(3)]
    sp = sol.s.derivative()
    for i in range(3):
        for j in range(3):
            t = C[i][j].derivative() + hlog * C[i][j]
            acc = K.zero()
            for k in range(3):
                acc = acc + C[i][k] * A0_s[k][j]
            t = t + sp * acc
            for k in range(3):
                t = t - A_K[i][k] * C[k][j]
            if not t.is_zero():
                return False
    return True


def _rat_at_algelem(r, s):
    """Rational function of z evaluated at an algebraic element."""
    K = s.field
    num = _poly_at_algelem(r.num, s)
    den = _poly_at_algelem(r.den, s)
    return num * den.inverse()


def _poly_at_algelem(p, s):
    K = s.field
    acc = K.zero()
    for c in reversed(p.coeffs):
        acc = acc * s + K.from_rat(RatFunc(UniPoly.const(c, K.var)))
    return acc


def _cf_matrix(L, K: FunctionField):
    """C_f over K with f the generator and its implicit derivatives."""
    f = K.gen()
    f1 = K.fprime
    f2 = f1.derivative()
    one = K.one()
    zero = K.zero()
    r0 = K.from_rat(L.rat_coeff(0))
    r1 = K.from_rat(L.rat_coeff(1))
    r2 = K.from_rat(L.rat_coeff(2))
    return [
        [one, f, zero],
        [zero, one + f1, f],
        [-(r0 * f), f2 - r1 * f, one + f1 * 2 - r2 * f],
    ]


def _mat_inv3(M):
    a, b, c = M[0]
    d, e, f_ = M[1]
    g, h, i = M[2]
    det = a * (e * i - f_ * h) - b * (d * i - f_ * g) + c * (d * h - e * g)
    if det.is_zero():
        raise MatchFailure("C_f is singular")
    adj = [
        [e * i - f_ * h, c * h - b * i, b * f_ - c * e],
        [f_ * g - d * i, a * i - c * g, c * d - a * f_],
        [d * h - e * g, b * g - a * h, a * e - b * d],
    ]
    inv_det = det.inverse()
    return [[x * inv_det for x in row] for row in adj]


def _mat_mul3(A, B):
    return [
        [sum((A[i][k] * B[k][j] for k in range(3)), A[i][0].field.zero()) for j in range(3)]
        for i in range(3)
    ]


def _c_matrix(L, K: FunctionField, w: AlgElem, kh: int):
    """C_f^(-1) * (C_h / h) with h = w^(1/kh); the scalar radical h rides
    along as (w, kh)."""
    g = w.derivative() * w.inverse() * qq(1, kh)
    one = K.one()
    zero = K.zero()
    Mh = [
        [one, zero, zero],
        [g, one, zero],
        [g.derivative() + g * g, g * 2, one],
    ]
    return _mat_mul3(_mat_inv3(_cf_matrix(L, K)), Mh)


def _chain_g168(P4: MultiPoly):
    P6 = hessian_det(P4) * qq(1, 54)
    P14 = bordered_hessian(P4, P6) * qq(1, 9)
    P21 = jacobian_det(P4, P6, P14) * qq(1, 14)
    return P6, P14, P21


def _assert_integer(e, what: str):
    from .rationals import den as _den

    if _den(e) != 1:
        raise SyzygyUnsatisfiable(f"non-integral radical exponent in {what}: {e}")
    return int(e)


# ---------------------------------------------------------------------------
# the five primitive constructors
# ---------------------------------------------------------------------------


def _first_exact(L0, candidates, assemble, screen_tol: float = 1e-25) -> PullbackSolution:
    """Assemble per candidate minimal polynomial; return the first whose
    gauge-connection identity passes the high-precision numeric screen.

    (The fully exact identity check, gauge_identity_holds, is available but
    too slow for routine use on large fields; the screen runs at 50 digits
    and the acceptance suite re-verifies independently.)"""
    from .errors import SyzygyUnsatisfiable as _SU, VerificationFailed as _VF
    from .verify import gauge_residual_numeric

    errors = []
    for K, qmin in candidates:
        try:
            sol = assemble(K, qmin)
        except (_SU, ZeroDivisionError) as exc:
            errors.append(str(exc))
            continue
        try:
            r = gauge_residual_numeric(L0, sol)
        except _VF as exc:
            errors.append(str(exc))
            continue
        if r < screen_tol:
            return sol
        errors.append(f"gauge residual {r:.2e} for qmin of f-degree {len(qmin) - 1}")
    raise IrreducibleFactorNotFound(
        "no factor of the designated gauge value yields an exact pullback: "
        + "; ".join(errors)
    )


def pullback_solution(cls) -> PullbackSolution:
    from .classify import TAG_A6, TAG_F36, TAG_G168, TAG_H72, TAG_H216

    builders = {
        TAG_G168: pullback_solution_g168,
        TAG_A6: pullback_solution_a6,
        TAG_H216: pullback_solution_h216,
        TAG_H72: pullback_solution_h72,
        TAG_F36: pullback_solution_f36,
    }
    if cls.tag not in builders:
        raise ValueError(f"no pullback constructor for {cls.tag}")
    return builders[cls.tag](cls)


def _primary_witnesses(cls, name: str):
    ws = cls.witnesses.get(name)
    if not ws:
        raise MatchFailure(f"classification carries no witnesses under {name}")
    return ws


def pullback_solution_g168(cls) -> PullbackSolution:
    L0 = cls.L0
    w = _primary_witnesses(cls, "B4(m=4,r=3,d=1)")[0]
    z0 = w.z0
    P4 = w.poly()
    P6, P14, P21 = _chain_g168(P4)
    # syzygy weights: P4 -> 1, P6 -> 3, P14 -> 8, P21 -> 12
    terms = [(QQ(-1), 24, P21 * P21)]
    for c, (a, b, cc) in (
        (-2048, (9, 1, 0)), (22016, (6, 3, 0)), (-256, (7, 0, 1)),
        (-60032, (3, 5, 0)), (1088, (4, 2, 1)), (1728, (0, 7, 0)),
        (1008, (1, 4, 1)), (-88, (2, 1, 2)),
    ):
        terms.append((QQ(c), a + 3 * b + 8 * cc, P4**a * P6**b * P14**cc))
    terms.append((QQ(1), 24, P14**3))
    d, v = solve_weight_scalar([(c, w_, m) for (c, w_, m) in terms])
    # s = -(a^8 Q14)^3 / (1728 (a^3 Q6)^7) = -(a^3) Q14^3/(1728 Q6^7): a^3 = v^(3/d)
    a3 = _scalar_power(v, d, 3)
    Q4 = gauge_equivalent_value(L0, P4, 4, w.r, w.p, z0)
    Q6 = gauge_equivalent_value(L0, P6, 6, 1, UniPoly.one(L0.var), z0)
    Q14 = gauge_equivalent_value(L0, P14, 14, w.r, w.p * w.p, z0)
    eq = Hypergeometric3F2((qq(-1, 42), qq(5, 42), qq(17, 42)), (qq(1, 3), qq(2, 3)), "z")

    def assemble(K, qmin):
        q14 = Q14.in_field(K)
        q6 = Q6.in_field(K)
        s = -(q14**3) * (q6**7).inverse() * qq(1, 1728) * a3
        s = _apply_radical(s, K, Q14.p, QQ(3) * Q14.radical_exponent(), L0.var, z0=z0)
        C = _c_matrix(L0, K, q6, 6)
        return PullbackSolution(
            group="G168class", equation=eq, K=K, qmin=qmin, s=s, C=C,
            h_base=q6, h_index=6, notes=[f"scalar a^{d} = {v}"],
        )

    return _first_exact(L0, _field_candidates(Q4, sqrt3=False), assemble)


def _apply_radical(s: AlgElem, K: FunctionField, p: UniPoly, exponent, var, z0=None) -> AlgElem:
    """Multiply by (p(z)/p(z0))^exponent, which must be an integer power.

    The p(z0) constant matters: s(z) is a genuine pullback argument, not a
    scale-free object.
    """
    if p.is_constant():
        return s
    k = _assert_integer(exponent, "pullback map")
    if k == 0:
        return s
    const = p.eval(z0) if z0 is not None else None
    den = UniPoly.const(const, var) if const is not None else UniPoly.one(var)
    return s * K.from_rat(RatFunc(p, den) ** k)


def _scalar_power(v, d: int, j: int):
    """a^j given a^d = v; requires d | j."""
    if j % d != 0:
        raise SyzygyUnsatisfiable(f"scalar power a^{j} not determined by a^{d}")
    if is_rat(v) or isinstance(v, QuadElt):
        out = QQ(1)
        for _ in range(j // d):
            out = out * v
        return out
    raise SyzygyUnsatisfiable("unexpected scalar representation")


def pullback_solution_a6(cls) -> PullbackSolution:
    L0 = cls.L0
    w = _primary_witnesses(cls, "B6(m=6,r=2,d=1)")[0]
    z0 = w.z0
    if not w.p.is_constant():
        raise SyzygyUnsatisfiable("A6 witness must be an invariant (trivial radical)")
    P6 = w.poly()
    P12 = hessian_det(P6) * qq(-1, 20250)
    P30 = bordered_hessian(P6, P12) * qq(1, 24300)
    P45 = jacobian_det(P6, P12, P30) * qq(1, 4860)
    terms = [(QQ(-19683), 24, P45 * P45)]
    for c, (a, b, cc) in (
        (4, (13, 1, 0)), (80, (11, 2, 0)), (816, (9, 3, 0)), (18, (10, 0, 1)),
        (4376, (7, 4, 0)), (198, (8, 1, 1)), (13084, (5, 5, 0)), (954, (6, 2, 1)),
        (12312, (3, 6, 0)), (-198, (4, 3, 1)), (5616, (1, 7, 0)), (-162, (5, 0, 2)),
        (-5508, (2, 4, 1)), (-1944, (3, 1, 2)), (-1944, (0, 5, 1)),
        (-1458, (1, 2, 2)), (729, (0, 0, 3)),
    ):
        terms.append((QQ(c), a + 3 * b + 8 * cc, P6**a * P12**b * P30**cc))
    d, v = solve_weight_scalar(terms)
    a1 = _scalar_power(v, d, 1)
    one = UniPoly.one(L0.var)
    Q6 = gauge_equivalent_value(L0, P6, 6, 1, one, z0)
    Q12 = gauge_equivalent_value(L0, P12, 12, 1, one, z0)
    Q30 = gauge_equivalent_value(L0, P30, 30, 1, one, z0)
    eq = Hypergeometric3F2((qq(-1, 60), qq(11, 60), qq(7, 12)), (qq(1, 2), qq(3, 4)), "z")

    def assemble(K, qmin):
        q12 = Q12.in_field(K)
        q30 = Q30.in_field(K)
        # s = [3 Q30]^2 / (8 [Q12]^5); scalar: (a^8)^2/(a^3)^5 = a
        s = (q30 * 3) ** 2 * ((q12**5) * 8).inverse() * a1
        C = _c_matrix(L0, K, q12, 12)
        return PullbackSolution(
            group="A6", equation=eq, K=K, qmin=qmin, s=s, C=C,
            h_base=q12, h_index=12, notes=[f"scalar a^{d} = {v}"],
        )

    return _first_exact(L0, _field_candidates(Q6, sqrt3=False), assemble)


def pullback_solution_h216(cls) -> PullbackSolution:
    L0 = cls.L0
    w6 = _primary_witnesses(cls, "B6(m=6,r=3,d=1)")[0]
    z0 = w6.z0
    B9 = semi_invariants(L0, 9, 1, 1, z0=z0)
    if not B9:
        raise MatchFailure("H216: no degree-9 invariant found")
    w9 = B9[0]
    P6 = w6.poly()
    P9 = w9.poly()
    P12 = hessian_det(P6) * qq(-1, 108000)
    HB = bordered_hessian(P6, P9)
    from .invtheory import _exact_mp_div

    P12ab = _exact_mp_div(HB, P12 * QQ(-675))
    # scalar rho1 = a^3/b^2 from 864 P_{b,9} P_{a,12} = -H(P_{b,9})
    H9 = hessian_det(P9)
    rho1 = poly_ratio_scalar(-H9, P9 * P12 * QQ(864))
    if rho1 is None or s_is_zero(rho1):
        raise SyzygyUnsatisfiable("H216: H(P9) pairing fails")
    # residual: 6912 rho1^3 b^2 P12^3 = [1728 rho1 P6^3 P9^2 - 3 P6^2 P12ab^2
    #           + 2592 P6 P12ab P9^2 + 186624 P9^4 - (4/rho1) P12ab^3] must fix b^2
    bracket = (
        P6**3 * P9**2 * (rho1 * QQ(1728))
        - P6**2 * P12ab**2 * QQ(3)
        + P6 * P12ab * P9**2 * QQ(2592)
        + P9**4 * QQ(186624)
        - P12ab**3 * s_div(QQ(4), rho1)
    )
    b2 = poly_ratio_scalar(bracket, P12**3 * (rho1 * rho1 * rho1 * QQ(6912)))
    if b2 is None:
        raise SyzygyUnsatisfiable("H216: the degree-36 syzygy does not normalize")
    one = UniPoly.one(L0.var)
    Q6 = gauge_equivalent_value(L0, P6, 6, w6.r, w6.p, z0)
    Q9 = gauge_equivalent_value(L0, P9, 9, 1, one, z0)
    Q12g = gauge_equivalent_value(L0, P12ab, 12, w6.r, w6.p * w6.p, z0)
    eq = Hypergeometric3F2((qq(17, 36), qq(2, 9), qq(-1, 36)), (qq(1, 3), qq(2, 3)), "1/z")

    def assemble(K, qmin):
        q9 = Q9.in_field(K)
        q12 = Q12g.in_field(K)
        # s = (6^6 Q9)^4 / Q12^3: scalars combine to rho1; the Q12 radical is
        # (p^2-unit)^(1/3) and enters cubed and inverted
        s = (q9 * QQ(6**6)) ** 4 * (q12**3).inverse() * rho1
        s = _apply_radical(s, K, Q12g.p, -(QQ(3) * Q12g.radical_exponent()), L0.var, z0=z0)
        C = _c_matrix(L0, K, q9, 9)
        return PullbackSolution(
            group="H216", equation=eq, K=K, qmin=qmin, s=s, C=C,
            h_base=q9, h_index=9, notes=[f"rho1 = {rho1}", f"b^2 = {b2}"],
        )

    return _first_exact(L0, _field_candidates(Q6, sqrt3=False), assemble)


def _factor_cubic_pair(P6: MultiPoly):
    """Factor a degree-6 semi-invariant into two cubics over Q(sqrt 3)."""
    import sympy

    x1, x2, x3 = sympy.symbols("X1 X2 X3")
    expr = 0
    for e, c in P6.terms.items():
        if is_rat(c):
            sc = sympy.Rational(str(c))
        else:
            sc = sympy.Rational(str(c.a)) + sympy.Rational(str(c.b)) * sympy.sqrt(c.D)
        expr += sc * x1 ** e[0] * x2 ** e[1] * x3 ** e[2]
    _co, fac = sympy.factor_list(expr, x1, x2, x3, extension=sympy.sqrt(3))
    cubics = []
    for g, mult in fac:
        pg = sympy.Poly(g, x1, x2, x3)
        if sum(pg.degree_list()) == 0:
            continue
        mp = _mp_from_sympy(pg)
        for _ in range(mult):
            cubics.append(mp)
    cubics = [c for c in cubics if c.total_degree() == 3]
    if len(cubics) != 2:
        raise SyzygyUnsatisfiable("degree-6 witness does not split into two cubics over Q(sqrt3)")
    return cubics[0], cubics[1]


def _mp_from_sympy(pg) -> MultiPoly:
    import sympy

    terms = {}
    s3 = sympy.sqrt(3)
    for e, c in pg.terms():
        c = sympy.expand(c)
        a = c.coeff(s3, 0)
        b = c.coeff(s3, 1)
        if not (a.is_Rational and b.is_Rational):
            raise SyzygyUnsatisfiable(f"coefficient {c} outside Q(sqrt3)")
        val = qq(int(a.p), int(a.q))
        if b != 0:
            val = QuadElt.make(val, qq(int(b.p), int(b.q)), 3)
        terms[e] = val
    return MultiPoly(terms, 3)


def _sqrt3_pairing(Pa: MultiPoly, Pb: MultiPoly):
    """lam1, lam2 with H(Pa) = lam1 Pb and H(Pb) = lam2 Pa; None if not both."""
    lam1 = poly_ratio_scalar(hessian_det(Pa), Pb)
    lam2 = poly_ratio_scalar(hessian_det(Pb), Pa)
    if lam1 is None or lam2 is None:
        return None
    return lam1, lam2


def _hesse_pair_scalars(P1: MultiPoly, P2: MultiPoly):
    """Assign (Pa, Pb) and compute c = a*b for the sqrt-3 cubic pair.

    Tries the printed branch (H(Pa) = -108(2+sqrt3) Pb) first, then the
    swapped branch, per the swap-on-failure rule; returns
    (Pa, Pb, c, mu, branch) with b = mu * a^3 and c^2 as solved.
    """
    s3 = sqrt_scalar(QQ(3))
    for branch, (k1, k2) in (("printed", (2 + s3, 2 - s3)), ("swapped", (2 - s3, 2 + s3))):
        for Pa, Pb in ((P1, P2), (P2, P1)):
            pair = _sqrt3_pairing(Pa, Pb)
            if pair is None:
                continue
            lam1, lam2 = pair
            den1 = QQ(-108) * k1
            den2 = QQ(-108) * k2
            mu = s_div(lam1, den1)
            # a^8 = den2 / (mu^3 lam2); c = ab with c^2 = 108^2/(lam1 lam2)
            v = s_div(den2, mu * mu * mu * lam2)
            c2 = s_div(QQ(108 * 108), lam1 * lam2)
            c = sqrt_scalar(c2)
            if c is None:
                continue
            yield branch, Pa, Pb, mu, v, c
            yield branch, Pa, Pb, mu, v, -c
    return


def pullback_solution_f36(cls) -> PullbackSolution:
    L0 = cls.L0
    ws = _primary_witnesses(cls, "B3(m=3,r=4,d=2)")
    if len(ws) < 2:
        raise MatchFailure("F36 needs the conjugate pair of degree-3 witnesses")
    w1, w2 = ws[0], ws[1]
    z0 = w1.z0
    P1, P2 = w1.poly(), w2.poly()
    chosen = None
    for branch, Pa, Pb, mu, v, c in _hesse_pair_scalars(P1, P2):
        P6n = (bordered_hessian(Pa, Pb) + bordered_hessian(Pb, Pa)) * qq(1, 648)
        s3 = sqrt_scalar(QQ(3))
        P9n = jacobian_det(Pa, Pb, P6n) * s3 * qq(1, 1944)
        if _f36_residual_ok(Pa, Pb, P6n, P9n, mu, v, c):
            chosen = (branch, Pa, Pb, mu, v, c, P6n, P9n)
            break
    if chosen is None:
        raise SyzygyUnsatisfiable("F36: no branch satisfies the residual syzygy")
    branch, Pa, Pb, mu, v, c, P6n, P9n = chosen
    wa = w1 if Pa is P1 else w2
    wb = w2 if Pa is P1 else w1
    one = UniPoly.one(L0.var)
    Q3 = gauge_equivalent_value(L0, Pb, 3, wb.r, wb.p, z0)
    Q6 = gauge_equivalent_value(L0, P6n, 6, 1, one, z0)
    Q9 = gauge_equivalent_value(L0, P9n, 9, 1, one, z0)
    eq = Hypergeometric3F2((qq(-1, 12), qq(1, 6), qq(5, 12)), (qq(1, 4), qq(3, 4)), "1/z")

    def assemble(K, qmin):
        q6 = Q6.in_field(K)
        q9 = Q9.in_field(K)
        # s = Q6^3/(Q6^3 - 432 Q9^2): the c-scalars cancel (both terms weigh c^6)
        q63 = q6**3
        s = q63 * (q63 - q9 * q9 * 432).inverse()
        C = _c_matrix(L0, K, q6, 6)
        return PullbackSolution(
            group="F36", equation=eq, K=K, qmin=qmin, s=s, C=C,
            h_base=q6, h_index=6, notes=[f"branch {branch}", f"c = ab = {c}"],
        )

    return _first_exact(L0, _field_candidates(Q3, sqrt3=True), assemble)


def _f36_residual_ok(Pa, Pb, P6n, P9n, mu, v, c) -> bool:
    """The printed residual, graded by a-weight mod 8 (a^8 = v, b = mu a^3):
    class-0 and class-4 sums must vanish separately."""
    s3 = sqrt_scalar(QQ(3))
    mu2 = mu * mu
    mu4 = mu2 * mu2
    mu5 = mu4 * mu
    mu6 = mu4 * mu2
    c2 = c * c
    # class 0 (weights 8, 16, 24 -> powers of v: 1, 2, 3)
    cls0 = (
        Pa * Pb**5 * ((QQ(2) * (-7 + 4 * s3)) * (mu5 * v * v))
        - Pa**5 * Pb * (QQ(2) * mu * v)
        + Pa**2 * Pb**2 * P6n * (QQ(12) * mu2 * c2 * v)
        - Pa**2 * P6n * Pb**2 * ((6 * s3) * (mu2 * c2 * v))
        + P6n**3 * ((-8 + 4 * s3) * (c2 * c2 * c2))
        + P9n**2 * ((QQ(1728) * (2 - s3)) * (c2 * c2 * c2))
    )
    # class 4 (weights 12, 20): common factor a^4 pulled out, leaving the
    # coefficients c2 and mu^4 c2 v
    cls4 = Pa**4 * P6n * (s3 * c2) + Pb**4 * P6n * ((12 - 7 * s3) * (mu4 * c2 * v))
    return cls0.is_zero() and cls4.is_zero()


def pullback_solution_h72(cls) -> PullbackSolution:
    L0 = cls.L0
    ws = _primary_witnesses(cls, "B6(m=6,r=2,d=1)")
    pair = None
    for w in ws:
        if w.p.is_constant():
            continue
        try:
            P1, P2 = _factor_cubic_pair(w.poly())
        except SyzygyUnsatisfiable:
            continue
        pair = (w, P1, P2)
        break
    if pair is None:
        raise SyzygyUnsatisfiable("H72: no order-2 degree-6 witness splits over Q(sqrt3)")
    w6, P1, P2 = pair
    z0 = w6.z0
    chosen = None
    for branch, Pa, Pb, mu, v, c in _hesse_pair_scalars(P1, P2):
        P6n = (bordered_hessian(Pa, Pb) + bordered_hessian(Pb, Pa)) * qq(1, 648)
        s3 = sqrt_scalar(QQ(3))
        P9n = jacobian_det(Pa, Pb, P6n) * s3 * qq(1, 1944)
        P12n = hessian_det(P6n) * qq(-1, 108000)
        if _h72_residual_ok(Pa, Pb, P6n, P9n, P12n, c):
            chosen = (branch, Pa, Pb, mu, v, c, P6n, P9n, P12n)
            break
    if chosen is None:
        raise SyzygyUnsatisfiable("H72: no branch satisfies the residual syzygy")
    branch, Pa, Pb, mu, v, c, P6n, P9n, P12n = chosen
    one = UniPoly.one(L0.var)
    PaPb = Pa * Pb
    Q6 = gauge_equivalent_value(L0, P6n, 6, 1, one, z0)
    Q9 = gauge_equivalent_value(L0, P9n, 9, 1, one, z0)
    Q12 = gauge_equivalent_value(L0, P12n, 12, 1, one, z0)
    Q6s = gauge_equivalent_value(L0, PaPb, 6, w6.r, w6.p, z0)
    eq = Hypergeometric3F2((qq(17, 36), qq(2, 9), qq(-1, 36)), (qq(1, 3), qq(2, 3)), "1/z")

    def assemble(K, qmin):
        q9 = Q9.in_field(K)
        q12 = Q12.in_field(K)
        q6s = Q6s.in_field(K)
        # radicals: Q6s carries (p-unit)^(1/2); squared -> integer power
        q6s2 = q6s * q6s
        q6s2b = _apply_radical(q6s2, K, Q6s.p, QQ(2) * Q6s.radical_exponent(), L0.var, z0=z0)
        # scalars: values scale as Q9 -> c^3, Q12 -> c^6, Q6s -> c
        c2 = c * c
        c6 = c2 * c2 * c2
        denom = q6s2b * c2 - q12 * (c6 * 12)
        s = (q9 * (QQ(6**6) * (c2 * c))) ** 4 * (denom**3).inverse()
        C = _c_matrix(L0, K, q9, 9)
        return PullbackSolution(
            group="H72", equation=eq, K=K, qmin=qmin, s=s, C=C,
            h_base=q9, h_index=9, notes=[f"branch {branch}", f"c = ab = {c}"],
        )

    return _first_exact(L0, _field_candidates(Q6, sqrt3=True), assemble)


def _h72_residual_ok(Pa, Pb, P6n, P9n, P12n, c) -> bool:
    from .invtheory import h72_syzygy_residual

    c2 = c * c
    P6c = P6n * c2
    P6sc = Pa * Pb * c
    P9c = P9n * (c2 * c)
    P12c = P12n * (c2 * c2 * c2)
    return h72_syzygy_residual(P6c, P6sc, P9c, P12c).is_zero()


# ---------------------------------------------------------------------------
# A5: symmetric-square descent
# ---------------------------------------------------------------------------


def pullback_solution_a5(cls) -> A5Solution:
    L0 = cls.L0
    ws = _primary_witnesses(cls, "B2(m=2,r=3,d=1)")
    w = ws[0]
    z0 = w.z0
    Q2 = gauge_equivalent_value(L0, w.poly(), 2, w.r, w.p, z0)
    last = None
    for K, qmin in _field_candidates(Q2, sqrt3=False):
        Cf = _cf_matrix(L0, K)
        Cf_inv = _mat_inv3(Cf)
        dCf = [[Cf[i][j].derivative() for j in range(3)] for i in range(3)]
        A = L0.companion()
        A_K = [[K.from_rat(A[i][j]) for j in range(3)] for i in range(3)]
        ACf = _mat_add(_mat_mul3(dCf, Cf_inv), _mat_mul3(_mat_mul3(Cf, A_K), Cf_inv))
        b0, b1, b2 = ACf[2][0], ACf[2][1], ACf[2][2]
        # L0_2 = Dz^2 - (b2/3) Dz + (-(b2^2)/18 + b2'/12 - b1/4)
        c1 = -(b2 * qq(1, 3))
        c0 = -(b2 * b2) * qq(1, 18) + b2.derivative() * qq(1, 12) - b1 * qq(1, 4)
        # exact symmetric-square gate: Sym^2(L0_2) must reproduce L_f, which
        # reduces to 4 c1 c0 + 2 c0' = -b0 (the b1-condition holds identically)
        if (c1 * c0 * 4 + c0.derivative() * 2 + b0).is_zero():
            return A5Solution(
                K=K, qmin=qmin, b=[b0, b1, b2], l0_coeffs=[c0, c1], C=Cf_inv,
                notes=["Y = C Y0 with Y0 the Wronskian of y1^2, y1 y2, y2^2"],
            )
        last = "symmetric-square identity fails"
    raise IrreducibleFactorNotFound(f"A5: {last or 'no factor candidates'}")


def _mat_add(A, B):
    return [[A[i][j] + B[i][j] for j in range(3)] for i in range(3)]
