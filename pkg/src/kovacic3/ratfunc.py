"""Rational functions num/den over the scalar field, kept in canonical form:
gcd(num, den) = 1 and den monic."""

from __future__ import annotations

from .rationals import QQ, as_qq, is_rat
from .scalars import is_scalar, s_div, s_is_zero
from .unipoly import UniPoly, poly_gcd


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None, var: str = "z", reduce: bool = True):
        if isinstance(num, RatFunc):
            assert den is None
            self.num, self.den = num.num, num.den
            return
        if is_scalar(num) or isinstance(num, int):
            num = UniPoly.const(num if not isinstance(num, int) else QQ(num), var)
        if den is None:
            den = UniPoly.one(num.var)
        elif is_scalar(den) or isinstance(den, int):
            den = UniPoly.const(den if not isinstance(den, int) else QQ(den), num.var)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce:
            num, den = self._reduce(num, den)
        self.num = num
        self.den = den

    @staticmethod
    def _reduce(num: UniPoly, den: UniPoly):
        if num.is_zero():
            return num, UniPoly.one(den.var)
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
        lc = den.lc()
        if lc != 1:
            num = num * s_div(QQ(1), lc)
            den = den.monic()
        return num, den

    @staticmethod
    def zero(var: str = "z") -> "RatFunc":
        return RatFunc(UniPoly.zero(var))

    @staticmethod
    def one(var: str = "z") -> "RatFunc":
        return RatFunc(UniPoly.one(var))

    @staticmethod
    def gen(var: str = "z") -> "RatFunc":
        return RatFunc(UniPoly.gen(var))

    @property
    def var(self):
        return self.num.var if not self.num.is_zero() else self.den.var

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num == self.den

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def as_scalar(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        if self.num.is_zero():
            return QQ(0)
        return s_div(self.num.coeffs[0], self.den.coeffs[0])

    def __add__(self, other):
        other = _coerce(other, self.var)
        if other is NotImplemented:
            return other
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        other = _coerce(other, self.var)
        if other is NotImplemented:
            return other
        return self.__add__(-other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        other = _coerce(other, self.var)
        if other is NotImplemented:
            return other
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other, self.var)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _coerce(other, self.var).__truediv__(self)

    def __pow__(self, k: int):
        if k < 0:
            return (RatFunc.one(self.var) / self) ** (-k)
        return RatFunc(self.num**k, self.den**k, reduce=False)

    def __eq__(self, other):
        other = _coerce(other, self.var)
        if other is NotImplemented:
            return other
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def derivative(self) -> "RatFunc":
        return RatFunc(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def eval(self, x):
        d = self.den.eval(x)
        if s_is_zero(d):
            raise ZeroDivisionError("pole at evaluation point")
        return s_div(self.num.eval(x), d)

    def __call__(self, x):
        return self.eval(x)

    def degree_at_infinity(self) -> int:
        """deg num - deg den (-inf for 0)."""
        if self.is_zero():
            return float("-inf")
        return self.num.degree - self.den.degree

    def __repr__(self):
        if self.den.is_one():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


def _coerce(x, var):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, UniPoly):
        return RatFunc(x, reduce=False)
    if is_scalar(x) or isinstance(x, int):
        return RatFunc(UniPoly.const(QQ(x) if isinstance(x, int) else x, var), reduce=False)
    return NotImplemented
