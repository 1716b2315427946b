"""Linear differential operators over Q(z) (and quadratic extensions).

A DiffOp is sum(a_i * Dz**i) with polynomial coefficients, globally coprime,
nonzero leading coefficient.  The module provides the normal form, adjoint,
composition, application to series and rational functions, the exponential
shift, companion matrices, and the z -> 1/z transform used for analysis at
infinity.

Sign convention for the exponential shift: ``exp_shift(L, g)`` returns the
operator satisfied by y * exp(-int g), i.e. it *removes* a hyperexponential
factor with logarithmic derivative g from the solutions.
"""

from __future__ import annotations

from .errors import WrongOrder, ZeroOperator
from .rationals import QQ, is_rat, qq
from .ratfunc import RatFunc
from .scalars import is_scalar, s_div
from .series import Series, poly_series_at
from .unipoly import UniPoly, poly_gcd, poly_lcm


class DiffOp:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs, normalize: bool = True):
        """coeffs: list of UniPoly/RatFunc/scalars, index = derivative order."""
        polys, mult = _clear_denominators(coeffs)
        while polys and polys[-1].is_zero():
            polys.pop()
        if not polys:
            raise ZeroOperator("all coefficients vanish")
        if normalize:
            polys = _remove_content(polys)
        self.coeffs = polys

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def var(self) -> str:
        return self.coeffs[-1].var

    def coeff(self, i: int) -> UniPoly:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return UniPoly.zero(self.var)

    def leading(self) -> UniPoly:
        return self.coeffs[-1]

    def rat_coeff(self, i: int) -> RatFunc:
        """a_i / a_n."""
        return RatFunc(self.coeff(i), self.leading())

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        a = self.monic_tuple()
        b = other.monic_tuple()
        return a == b

    def monic_tuple(self):
        lead = self.coeffs[-1]
        return tuple(RatFunc(c, lead) for c in self.coeffs)

    def __hash__(self):
        return hash(self.monic_tuple())

    def __repr__(self):
        parts = []
        for i in range(self.order, -1, -1):
            c = self.coeff(i)
            if c.is_zero():
                continue
            if i == 0:
                parts.append(f"({c})")
            else:
                parts.append(f"({c})*Dz^{i}" if i > 1 else f"({c})*Dz")
        return " + ".join(parts)

    # -- actions ---------------------------------------------------------------

    def apply_series(self, s: Series, z0) -> Series:
        """L(y) for a series y in x = z - z0."""
        # polynomial series are exact, so any stated precision is legitimate
        punits = (s.prec - min(s.off, 0)) // s.ram + self.order + 2
        out = None
        d = s
        for i, a in enumerate(self.coeffs):
            if not a.is_zero():
                ps = poly_series_at(a, z0, punits)
                if s.ram > 1:
                    ps = ps.with_ram(s.ram)
                term = ps * d
                out = term if out is None else out + term
            if i < self.order:
                d = d.derivative()
        return out

    def apply_ratfunc(self, r: RatFunc) -> RatFunc:
        out = RatFunc.zero(self.var)
        d = r
        for i, a in enumerate(self.coeffs):
            if not a.is_zero():
                out = out + RatFunc(a) * d
            if i < self.order:
                d = d.derivative()
        return out

    # -- transforms ---------------------------------------------------------------

    def adjoint(self, normalize: bool = True) -> "DiffOp":
        """Formal adjoint sum((-Dz)**i . a_i)."""
        n = self.order
        out = [UniPoly.zero(self.var) for _ in range(n + 1)]
        for i, a in enumerate(self.coeffs):
            # (-D)^i . a = sum_k (-1)^i C(i,k) a^(k) D^(i-k)
            sign = QQ(-1) ** i
            d = a
            for k in range(i + 1):
                out[i - k] = out[i - k] + d * (sign * _binom(i, k))
                d = d.derivative()
        return DiffOp(out, normalize=normalize)

    def compose(self, other: "DiffOp") -> "DiffOp":
        """Operator product self . other (apply other first)."""
        result = [RatFunc.zero(self.var) for _ in range(self.order + other.order + 1)]
        # rows[j] = coefficients of D^j applied after writing D^i . other
        cur = [RatFunc(c, UniPoly.one(self.var), reduce=False) for c in other.coeffs]
        for i, a in enumerate(self.coeffs):
            if not a.is_zero():
                ra = RatFunc(a)
                for j, c in enumerate(cur):
                    if not c.is_zero():
                        result[j] = result[j] + ra * c
            if i < self.order:
                # cur := D . cur  (as an operator: coefficients c_j -> c_j' with shift)
                nxt = [RatFunc.zero(self.var) for _ in range(len(cur) + 1)]
                for j, c in enumerate(cur):
                    if not c.is_zero():
                        nxt[j] = nxt[j] + c.derivative()
                        nxt[j + 1] = nxt[j + 1] + c
                cur = nxt
        return DiffOp(result)

    def __mul__(self, other):
        if isinstance(other, DiffOp):
            return self.compose(other)
        return NotImplemented

    def exp_shift(self, g: RatFunc) -> "DiffOp":
        """Operator for y*exp(-int g): substitutes Dz -> Dz + g."""
        if not isinstance(g, RatFunc):
            g = RatFunc(g)
        n = self.order
        # v[i][j]: (d/dz + g)^i = sum_j v[i][j] D^j
        v = [[RatFunc.one(self.var)]]
        for i in range(n):
            prev = v[-1]
            nxt = [RatFunc.zero(self.var) for _ in range(i + 2)]
            for j, c in enumerate(prev):
                if c.is_zero():
                    continue
                nxt[j] = nxt[j] + c.derivative() + g * c
                nxt[j + 1] = nxt[j + 1] + c
            v.append(nxt)
        out = [RatFunc.zero(self.var) for _ in range(n + 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            ra = RatFunc(a)
            for j, c in enumerate(v[i]):
                if not c.is_zero():
                    out[j] = out[j] + ra * c
        return DiffOp(out)

    def remove_subleading(self) -> tuple["DiffOp", RatFunc]:
        """Wronskian reduction: returns (L0, g) with g = -a_{n-1}/(n a_n) such
        that exp_shift by g kills the sub-leading coefficient; solutions of L0
        are y*exp(-int g)."""
        n = self.order
        g = RatFunc(self.coeff(n - 1), self.leading() * QQ(-n))
        L0 = self.exp_shift(g)
        return L0, g

    def transform_reciprocal(self) -> "DiffOp":
        """Operator satisfied by u(x) = y(1/x); used for analysis at infinity."""
        n = self.order
        x = UniPoly.gen(self.var)
        # D_z acting through z = 1/x:  d/dz = -x^2 d/dx
        # rows v[i][j]: (d/dz)^i = sum_j v[i][j](x) (d/dx)^j
        v = [[RatFunc.one(self.var)]]
        minus_x2 = RatFunc(UniPoly([0, 0, -1], self.var))
        for i in range(n):
            prev = v[-1]
            nxt = [RatFunc.zero(self.var) for _ in range(i + 2)]
            for j, c in enumerate(prev):
                if c.is_zero():
                    continue
                nxt[j] = nxt[j] + minus_x2 * c.derivative()
                nxt[j + 1] = nxt[j + 1] + minus_x2 * c
            v.append(nxt)
        out = [RatFunc.zero(self.var) for _ in range(n + 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            # a(1/x) = rev(a)(x) / x^deg
            d = a.degree
            ra = RatFunc(a.reverse(), UniPoly.monomial(QQ(1), d, self.var))
            for j, c in enumerate(v[i]):
                if not c.is_zero():
                    out[j] = out[j] + ra * c
        return DiffOp(out)

    def companion(self):
        """Companion matrix of an order-3 operator (3x3 RatFunc rows)."""
        if self.order != 3:
            raise WrongOrder(f"order {self.order}, expected 3")
        zero = RatFunc.zero(self.var)
        one = RatFunc.one(self.var)
        return [
            [zero, one, zero],
            [zero, zero, one],
            [-self.rat_coeff(0), -self.rat_coeff(1), -self.rat_coeff(2)],
        ]


def _binom(n: int, k: int) -> int:
    from math import comb

    return comb(n, k)


def _clear_denominators(coeffs) -> tuple[list[UniPoly], UniPoly]:
    var = None
    items = []
    for c in coeffs:
        if isinstance(c, RatFunc):
            var = var or c.var
        elif isinstance(c, UniPoly):
            var = var or c.var
    var = var or "z"
    for c in coeffs:
        if isinstance(c, RatFunc):
            items.append(c)
        elif isinstance(c, UniPoly):
            items.append(RatFunc(c, reduce=False))
        elif is_scalar(c) or isinstance(c, int):
            items.append(RatFunc(UniPoly.const(QQ(c) if isinstance(c, int) else c, var), reduce=False))
        else:
            raise TypeError(f"bad coefficient {c!r}")
    lcm = UniPoly.one(var)
    for r in items:
        lcm = poly_lcm(lcm, r.den)
    polys = [r.num * lcm.exact_div(r.den) for r in items]
    return polys, lcm


def _remove_content(polys: list[UniPoly]) -> list[UniPoly]:
    g = UniPoly.zero(polys[-1].var)
    for p in polys:
        if not p.is_zero():
            g = poly_gcd(g, p)
    if g.degree > 0:
        polys = [p.exact_div(g) if not p.is_zero() else p for p in polys]
    if all(p.is_rational() for p in polys):
        # integer-normalize: primitive over Z with positive leading coefficient
        from .rationals import den as _den, ilcm, num as _num

        d = 1
        for p in polys:
            for c in p.coeffs:
                d = ilcm(d, _den(c))
        import math

        gint = 0
        for p in polys:
            for c in p.coeffs:
                gint = math.gcd(gint, _num(c) * (d // _den(c)))
        scale = qq(d, gint if gint else 1)
        if polys[-1].lc() * scale < 0:
            scale = -scale
        polys = [p * scale for p in polys]
    else:
        lc = polys[-1].lc()
        polys = [p * s_div(QQ(1), lc) for p in polys]
    return polys


def diffop_from_rat(coeffs_rat: list[RatFunc]) -> DiffOp:
    return DiffOp(coeffs_rat)


def normalize(L: DiffOp) -> DiffOp:
    """Re-normalize (constructor already enforces the normal form)."""
    return DiffOp(list(L.coeffs))
