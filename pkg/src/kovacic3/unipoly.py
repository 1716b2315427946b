"""Dense univariate polynomials over the scalar field.

Coefficients are scalars (rational or QuadElt), stored dense with no trailing
zeros.  The zero polynomial has degree -inf.  Rational-only polynomials take
fast integer-kernel paths (Kronecker multiply, primitive-PRS gcd).
"""

from __future__ import annotations

import math

from . import intpoly
from .rationals import QQ, as_qq, den, ilcm, is_rat, num, qq
from .scalars import QuadElt, is_scalar, join_field, s_conj, s_div, s_field, s_is_zero

NEG_INF = float("-inf")


def _trim(cs: list) -> list:
    while cs and s_is_zero(cs[-1]):
        cs.pop()
    return cs


class UniPoly:
    """Polynomial sum(c[i] * var**i)."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs, var: str = "z"):
        if isinstance(coeffs, UniPoly):
            self.coeffs = list(coeffs.coeffs)
            self.var = coeffs.var
            return
        cs = []
        for c in coeffs:
            if isinstance(c, int):
                c = QQ(c)
            cs.append(c)
        self.coeffs = _trim(cs)
        self.var = var

    # -- constructors --------------------------------------------------------

    @staticmethod
    def const(c, var: str = "z") -> "UniPoly":
        return UniPoly([c], var)

    @staticmethod
    def zero(var: str = "z") -> "UniPoly":
        return UniPoly([], var)

    @staticmethod
    def one(var: str = "z") -> "UniPoly":
        return UniPoly([QQ(1)], var)

    @staticmethod
    def gen(var: str = "z") -> "UniPoly":
        return UniPoly([QQ(0), QQ(1)], var)

    @staticmethod
    def monomial(c, k: int, var: str = "z") -> "UniPoly":
        return UniPoly([QQ(0)] * k + [c], var)

    # -- basic queries ---------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 1

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def lc(self):
        if not self.coeffs:
            return QQ(0)
        return self.coeffs[-1]

    def __getitem__(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return QQ(0)

    def field(self):
        d = None
        for c in self.coeffs:
            d = join_field(d, s_field(c))
        return d

    def is_rational(self) -> bool:
        return all(is_rat(c) for c in self.coeffs)

    def _check_var(self, other: "UniPoly"):
        if self.var != other.var and self.coeffs and other.coeffs:
            if not (self.is_constant() or other.is_constant()):
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other):
        if is_scalar(other) or isinstance(other, int):
            other = UniPoly.const(other, self.var)
        if not isinstance(other, UniPoly):
            return NotImplemented
        self._check_var(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly(out, self.var if self.coeffs else other.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        if is_scalar(other) or isinstance(other, int):
            other = UniPoly.const(other, self.var)
        return self.__add__(-other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if is_scalar(other) or isinstance(other, int):
            if s_is_zero(as_qq(other) if isinstance(other, int) else other):
                return UniPoly.zero(self.var)
            return UniPoly([c * other for c in self.coeffs], self.var)
        if not isinstance(other, UniPoly):
            return NotImplemented
        self._check_var(other)
        if self.is_zero() or other.is_zero():
            return UniPoly.zero(self.var)
        if self.is_rational() and other.is_rational():
            return self._mul_rational(other)
        out = [QQ(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not s_is_zero(a):
                for j, b in enumerate(other.coeffs):
                    if not s_is_zero(b):
                        out[i + j] = out[i + j] + a * b
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def _mul_rational(self, other: "UniPoly") -> "UniPoly":
        da = 1
        for c in self.coeffs:
            da = ilcm(da, den(c))
        db = 1
        for c in other.coeffs:
            db = ilcm(db, den(c))
        ia = [num(c) * (da // den(c)) for c in self.coeffs]
        ib = [num(c) * (db // den(c)) for c in other.coeffs]
        prod = intpoly.mul_int(ia, ib)
        d = da * db
        return UniPoly([qq(c, d) for c in prod], self.var)

    def __pow__(self, k: int) -> "UniPoly":
        if k < 0:
            raise ValueError("negative power of polynomial")
        r = UniPoly.one(self.var)
        base = self
        while k:
            if k & 1:
                r = r * base
            k >>= 1
            if k:
                base = base * base
        return r

    def divmod(self, other: "UniPoly"):
        """Exact field division with remainder."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        self._check_var(other)
        q = [QQ(0)] * max(0, len(self.coeffs) - len(other.coeffs) + 1)
        r = list(self.coeffs)
        dlc = other.lc()
        db = len(other.coeffs) - 1
        while len(r) - 1 >= db and r:
            c = s_div(r[-1], dlc)
            k = len(r) - 1 - db
            q[k] = c
            for i, bc in enumerate(other.coeffs):
                r[k + i] = r[k + i] - c * bc
            _trim(r)
        return UniPoly(q, self.var), UniPoly(r, self.var)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("inexact polynomial division")
        return q

    def __eq__(self, other):
        if is_scalar(other) or isinstance(other, int):
            other = UniPoly.const(other, self.var)
        if not isinstance(other, UniPoly):
            return NotImplemented
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.var, tuple(self.coeffs)))

    # -- calculus / evaluation ---------------------------------------------------

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def eval(self, x):
        r = QQ(0)
        for c in reversed(self.coeffs):
            r = r * x + c
        return r

    def __call__(self, x):
        return self.eval(x)

    def shift(self, c) -> "UniPoly":
        """p(z + c) by Horner-Taylor."""
        if s_is_zero(as_qq(c) if isinstance(c, int) else c):
            return self
        out = []
        rem = list(self.coeffs)
        for _ in range(len(self.coeffs)):
            # synthetic division by (z - (-c)) accumulates Taylor coeffs at -(-c)
            acc = QQ(0)
            for i in range(len(rem) - 1, -1, -1):
                acc = rem[i] + acc * c
                rem[i] = acc
            out.append(rem.pop(0))
        return UniPoly(out, self.var)

    def reverse(self, at_degree: int | None = None) -> "UniPoly":
        """Coefficient reversal z**d * p(1/z)."""
        d = at_degree if at_degree is not None else len(self.coeffs) - 1
        cs = [QQ(0)] * (d + 1)
        for i, c in enumerate(self.coeffs):
            cs[d - i] = c
        return UniPoly(cs, self.var)

    def compose(self, inner: "UniPoly") -> "UniPoly":
        r = UniPoly.zero(self.var)
        for c in reversed(self.coeffs):
            r = r * inner + c
        return r

    def conjugate(self) -> "UniPoly":
        return UniPoly([s_conj(c) for c in self.coeffs], self.var)

    # -- normal forms ------------------------------------------------------------

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        lc = self.lc()
        if lc == 1:
            return self
        return UniPoly([s_div(c, lc) for c in self.coeffs], self.var)

    def content_and_primitive(self):
        """For rational polynomials: (content, primitive) with primitive in Z[z],
        integer coefficients coprime, positive leading coefficient."""
        if not self.is_rational():
            raise ValueError("content defined for rational polynomials only")
        if self.is_zero():
            return QQ(0), self
        d = 1
        for c in self.coeffs:
            d = ilcm(d, den(c))
        ints = [num(c) * (d // den(c)) for c in self.coeffs]
        g = intpoly.content_int(ints)
        if ints[-1] < 0:
            g = -g
        return qq(g, d), UniPoly([qq(c, g) for c in ints], self.var)

    def valuation(self) -> int:
        """Order of vanishing at 0 (len(coeffs) for the zero polynomial)."""
        for i, c in enumerate(self.coeffs):
            if not s_is_zero(c):
                return i
        return len(self.coeffs)

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if s_is_zero(c):
                continue
            if i == 0:
                parts.append(f"{c}")
            elif i == 1:
                parts.append(f"{c}*{self.var}" if c != 1 else self.var)
            else:
                parts.append(f"{c}*{self.var}^{i}" if c != 1 else f"{self.var}^{i}")
        return " + ".join(parts).replace("+ -", "- ")


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd; gcd(0, 0) = 0."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    a._check_var(b)
    if a.is_rational() and b.is_rational():
        _, pa = a.content_and_primitive()
        _, pb = b.content_and_primitive()
        ia = [num(c) for c in pa.coeffs]
        ib = [num(c) for c in pb.coeffs]
        g = intpoly.gcd_int(ia, ib)
        return UniPoly([QQ(c) for c in g], a.var).monic()
    # generic monic Euclid over a quadratic field
    x, y = a.monic(), b.monic()
    while not y.is_zero():
        r = x % y
        x, y = y, (r.monic() if not r.is_zero() else r)
    return x.monic()


def poly_lcm(a: UniPoly, b: UniPoly) -> UniPoly:
    if a.is_zero() or b.is_zero():
        return UniPoly.zero(a.var)
    g = poly_gcd(a, b)
    return (a * b).exact_div(g).monic()


def squarefree_part(p: UniPoly) -> UniPoly:
    if p.is_zero() or p.degree == 0:
        return UniPoly.one(p.var)
    g = poly_gcd(p, p.derivative())
    return p.exact_div(g).monic()
