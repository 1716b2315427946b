"""Riccati polynomials from semi-invariants that factor into linear forms.

The construction evaluates P(T y - y') / P(y): only the X3-free block of the
value vector enters, the radical parts cancel, and the result is the monic
cubic over Q(z) whose roots are the logarithmic derivatives of the three
line solutions.
"""

from __future__ import annotations

from math import comb

from .errors import NoLinearCombination, ZeroLeadingValue
from .invtheory import hessian_det, linear_factor_test
from .multipoly import MultiPoly
from .rationals import QQ, qq
from .ratfunc import RatFunc
from .scalars import s_is_zero
from .semiinv import SemiInvariantWitness, semi_invariants, values_of_semi_invariant
from .symmetric import multinom, triples
from .unipoly import UniPoly, poly_gcd
from .factorization import rational_roots


class RiccatiPolynomial:
    """Monic polynomial in T over Q(z); roots are log-derivatives of solutions."""

    def __init__(self, coeffs: list[RatFunc]):
        # coeffs[k] multiplies T^k; leading coefficient 1
        assert coeffs[-1].is_one()
        self.coeffs = coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other):
        if not isinstance(other, RiccatiPolynomial):
            return NotImplemented
        return len(self.coeffs) == len(other.coeffs) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __repr__(self):
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            if k == self.degree:
                parts.append(f"T^{k}")
            elif k == 0:
                parts.append(f"({c})")
            else:
                parts.append(f"({c})*T^{k}" if k > 1 else f"({c})*T")
        return " + ".join(parts)


def produce_riccati_polynomial(L, witness: SemiInvariantWitness) -> RiccatiPolynomial:
    """Riccati polynomial of L from a degree-m semi-invariant witness whose
    polynomial factors into linear forms."""
    m = witness.m
    vals = values_of_semi_invariant(
        L, m, witness.r, witness.z0, witness.c_o, witness.p, restrict=True
    )
    return riccati_from_values(vals.entries, m)


def riccati_from_values(entries: list[RatFunc], m: int) -> RiccatiPolynomial:
    a = entries[0]
    if a.is_zero():
        raise ZeroLeadingValue("first value entry vanishes; re-expand elsewhere")
    coeffs = [RatFunc.zero(a.var) for _ in range(m + 1)]
    for k in range(m + 1):
        # coefficient of T^(m-k) is (-1)^k F_{k+1} / (C(m,k) a)
        coeffs[m - k] = entries[k] * (QQ((-1) ** k) / QQ(comb(m, k))) / a
    return RiccatiPolynomial(coeffs)


def riccati_solution_imprimitive(L0, witnesses=None) -> tuple[RiccatiPolynomial, SemiInvariantWitness]:
    """Riccati polynomial for an imprimitive (sub-leading-free) operator.

    With one witness the semi-invariant must itself factor into lines; with a
    two-dimensional space the product-of-lines member is located by solving
    the Hessian proportionality on combinations.
    """
    if witnesses is None:
        witnesses = semi_invariants(L0, 3, 2, 2)
    if not witnesses:
        raise NoLinearCombination("no degree-3 order-2 semi-invariant found")
    # direct hits first
    for w in witnesses:
        if linear_factor_test(w.poly()):
            return produce_riccati_polynomial(L0, w), w
    # combinations within a common hyperexponential part
    groups: dict = {}
    for w in witnesses:
        groups.setdefault((repr(w.p), w.r), []).append(w)
    for ws in groups.values():
        if len(ws) < 2:
            continue
        for i in range(len(ws)):
            for j in range(i + 1, len(ws)):
                t = _linear_combination_parameter(ws[i].poly(), ws[j].poly())
                if t is None:
                    continue
                w1, w2 = ws[i], ws[j]
                c_o = [a * t + b for a, b in zip(w1.c_o, w2.c_o)]
                combined = SemiInvariantWitness(
                    c_o=c_o, m=3, r=w1.r, p=w1.p, D=w1.D, z0=w1.z0
                )
                if linear_factor_test(combined.poly()):
                    return produce_riccati_polynomial(L0, combined), combined
    raise NoLinearCombination(
        "no product-of-lines combination of the degree-3 semi-invariants"
    )


def _linear_combination_parameter(P1: MultiPoly, P2: MultiPoly):
    """t with H(t P1 + P2) proportional to t P1 + P2 (nonzero factor); None if
    no rational t works.  Proportionality is solved projectively, so the
    Hessian eigenvalue needs no normalization."""
    # expand H(t P1 + P2) = sum_k t^k H_k with H_k multilinear pieces
    h1 = [[P1.diff(i).diff(j) for j in range(3)] for i in range(3)]
    h2 = [[P2.diff(i).diff(j) for j in range(3)] for i in range(3)]
    hk = [MultiPoly.zero(3) for _ in range(4)]
    import itertools

    for sigma in itertools.permutations(range(3)):
        sign = _perm_sign(sigma)
        for picks in itertools.product((0, 1), repeat=3):
            term = MultiPoly.const(QQ(sign), 3)
            for row, (col, pick) in enumerate(zip(sigma, picks)):
                term = term * (h1[row][col] if pick else h2[row][col])
            hk[sum(picks)] = hk[sum(picks)] + term
    # want: (sum t^k hk) wedge (t P1 + P2) = 0 as polynomials in X
    # build coefficients of t^j of HP = sum_k t^k hk and QP = t P1 + P2,
    # impose all 2x2 minors of the coefficient matrix across monomials
    monos = set()
    for p in hk + [P1, P2]:
        monos.update(p.terms)
    monos = sorted(monos)
    # cross-multiplication: for all pairs of monomials e, f:
    # HP[e]*QP[f] - HP[f]*QP[e] = 0  -> polynomial in t
    polys = []
    base = None
    for a in range(len(monos)):
        for b in range(a + 1, len(monos)):
            e, f = monos[a], monos[b]
            pe = [hk[k].terms.get(e, QQ(0)) for k in range(4)]
            pf = [hk[k].terms.get(f, QQ(0)) for k in range(4)]
            qe = [P2.terms.get(e, QQ(0)), P1.terms.get(e, QQ(0))]
            qf = [P2.terms.get(f, QQ(0)), P1.terms.get(f, QQ(0))]
            # (sum pe t^k)(sum qf t^j) - (sum pf t^k)(sum qe t^j)
            cs = [QQ(0)] * 6
            for k in range(4):
                for j in range(2):
                    cs[k + j] = cs[k + j] + pe[k] * qf[j] - pf[k] * qe[j]
            pol = UniPoly(cs, "t")
            if pol.is_zero():
                continue
            base = pol if base is None else poly_gcd(base, pol)
            if base.degree == 0:
                return None
            polys.append(pol)
    if base is None or base.degree < 1:
        return None
    if not base.is_rational():
        return None
    for t in rational_roots(base):
        # reject t giving a degenerate (H = 0) cubic; checked by the caller
        return t
    return None


def _perm_sign(sigma) -> int:
    sign = 1
    s = list(sigma)
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[i] > s[j]:
                sign = -sign
    return sign
