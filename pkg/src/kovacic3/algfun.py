"""Arithmetic in K = k(z)[f] / (Qmin(f)) with the implicit derivation.

Qmin is an irreducible polynomial in f over k(z) (k = Q or Q(sqrt 3)); the
derivation extends d/dz through f' = -(dQ/dz)/(dQ/df) mod Qmin.  Elements
are coefficient vectors against powers of f.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rationals import QQ
from .ratfunc import RatFunc
from .unipoly import UniPoly


def _fp_trim(cs: list[RatFunc]) -> list[RatFunc]:
    while cs and cs[-1].is_zero():
        cs.pop()
    return cs


def _fp_add(a, b, var):
    out = [RatFunc.zero(var) for _ in range(max(len(a), len(b)))]
    for i, c in enumerate(a):
        out[i] = out[i] + c
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return _fp_trim(out)


def _fp_mul(a, b, var):
    if not a or not b:
        return []
    out = [RatFunc.zero(var) for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return _fp_trim(out)


def _fp_divmod(a, b, var):
    a = list(a)
    q = [RatFunc.zero(var) for _ in range(max(0, len(a) - len(b) + 1))]
    while a and len(a) >= len(b):
        c = a[-1] / b[-1]
        k = len(a) - len(b)
        q[k] = q[k] + c
        for i, bc in enumerate(b):
            a[k + i] = a[k + i] - c * bc
        _fp_trim(a)
    return q, a


class FunctionField:
    """K = k(z)[f]/(Qmin), Qmin monic in f with RatFunc coefficients."""

    def __init__(self, qmin: list[RatFunc], var: str = "z"):
        qmin = _fp_trim([RatFunc(c) if isinstance(c, UniPoly) else c for c in qmin])
        lead = qmin[-1]
        self.var = var
        self.qmin = [c / lead for c in qmin]
        self.deg = len(self.qmin) - 1
        # derivation: f' = -dQ/dz / dQ/df  (mod Qmin)
        dz = _fp_trim([c.derivative() for c in self.qmin])
        df = _fp_trim([c * QQ(k) for k, c in enumerate(self.qmin)][1:])
        neg_dz = [-c for c in dz]
        self.fprime = self.elt(neg_dz) * self.elt(df).inverse()

    # -- element constructors -------------------------------------------------

    def elt(self, coeffs) -> "AlgElem":
        cs = []
        for c in coeffs:
            if isinstance(c, UniPoly):
                c = RatFunc(c)
            elif not isinstance(c, RatFunc):
                c = RatFunc(UniPoly.const(QQ(c) if isinstance(c, int) else c, self.var))
            cs.append(c)
        cs = self._reduce(cs)
        return AlgElem(self, cs)

    def zero(self) -> "AlgElem":
        return AlgElem(self, [])

    def one(self) -> "AlgElem":
        return self.elt([RatFunc.one(self.var)])

    def gen(self) -> "AlgElem":
        return self.elt([RatFunc.zero(self.var), RatFunc.one(self.var)])

    def from_rat(self, r) -> "AlgElem":
        return self.elt([r])

    def _reduce(self, cs):
        cs = _fp_trim(list(cs))
        while len(cs) > self.deg:
            _q, cs = _fp_divmod(cs, self.qmin, self.var)
            cs = _fp_trim(cs)
        return cs

    def qmin_unipoly_pair(self):
        """Qmin as (denominator-cleared coefficient list of UniPoly, info)."""
        from .unipoly import poly_lcm

        lcm = UniPoly.one(self.var)
        for c in self.qmin:
            lcm = poly_lcm(lcm, c.den)
        return [c.num * lcm.exact_div(c.den) for c in self.qmin]


@dataclass
class AlgElem:
    field: FunctionField
    coeffs: list  # RatFunc per power of f, reduced mod Qmin

    def is_zero(self) -> bool:
        return not self.coeffs

    def _c(self, other):
        if isinstance(other, AlgElem):
            return other
        return self.field.elt([other] if not isinstance(other, list) else other)

    def __add__(self, other):
        other = self._c(other)
        return AlgElem(self.field, _fp_add(self.coeffs, other.coeffs, self.field.var))

    __radd__ = __add__

    def __neg__(self):
        return AlgElem(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self.__add__(-self._c(other))

    def __rsub__(self, other):
        return (-self).__add__(self._c(other))

    def __mul__(self, other):
        other = self._c(other)
        prod = _fp_mul(self.coeffs, other.coeffs, self.field.var)
        return AlgElem(self.field, self.field._reduce(prod))

    __rmul__ = __mul__

    def inverse(self) -> "AlgElem":
        if self.is_zero():
            raise ZeroDivisionError("inverting zero algebraic element")
        var = self.field.var
        r0, r1 = list(self.field.qmin), list(self.coeffs)
        s0 = []
        s1 = [RatFunc.one(var)]
        while r1:
            q, r = _fp_divmod(r0, r1, var)
            r0, r1 = r1, r
            s0, s1 = s1, _fp_add(s0, [-c for c in _fp_mul(q, s1, var)], var)
        if len(r0) != 1:
            raise ZeroDivisionError("element not invertible (Qmin reducible?)")
        inv_lead = RatFunc.one(var) / r0[0]
        return AlgElem(self.field, self.field._reduce([c * inv_lead for c in s0]))

    def __truediv__(self, other):
        return self * self._c(other).inverse()

    def __rtruediv__(self, other):
        return self._c(other) * self.inverse()

    def __pow__(self, k: int) -> "AlgElem":
        if k < 0:
            return self.inverse() ** (-k)
        r = self.field.one()
        base = self
        while k:
            if k & 1:
                r = r * base
            k >>= 1
            if k:
                base = base * base
        return r

    def derivative(self) -> "AlgElem":
        var = self.field.var
        out = self.field.elt([c.derivative() for c in self.coeffs])
        # chain part: sum k c_k f^(k-1) f'
        chain = [RatFunc.zero(var) for _ in range(max(0, len(self.coeffs) - 1))]
        for k in range(1, len(self.coeffs)):
            chain[k - 1] = self.coeffs[k] * QQ(k)
        if chain:
            out = out + AlgElem(self.field, _fp_trim(chain)) * self.field.fprime
        return out

    def __eq__(self, other):
        other = self._c(other)
        d = self - other
        return d.is_zero()

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if k == 0:
                parts.append(f"({c})")
            else:
                parts.append(f"({c})*f^{k}" if k > 1 else f"({c})*f")
        return " + ".join(parts)
