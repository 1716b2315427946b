"""Truncated power / Puiseux series in a local variable x = z - z0.

A Series holds exponents (off + k)/ram for k = 0..len(coeffs)-1 and is valid
modulo x**(prec/ram): ``prec`` is exclusive, in 1/ram units.  Ordinary-point
work uses ram = 1 throughout; ramified lattices only appear under the
expand-at-singularity option.  Truncation is tracked explicitly: consuming
more precision than available raises TruncationTooSmall.
"""

from __future__ import annotations

from . import intpoly
from .errors import DivisionByZeroSeries, TruncationTooSmall
from .rationals import QQ, as_qq, den, ilcm, is_rat, num, qq
from .scalars import is_scalar, s_is_zero
from .unipoly import UniPoly


class Series:
    __slots__ = ("coeffs", "off", "prec", "ram")

    def __init__(self, coeffs, off: int, prec: int, ram: int = 1):
        self.coeffs = [QQ(c) if isinstance(c, int) else c for c in coeffs]
        self.off = off
        self.prec = prec
        self.ram = ram
        if len(self.coeffs) > prec - off:
            del self.coeffs[prec - off :]
        self._normalize()

    def _normalize(self):
        cs = self.coeffs
        while cs and s_is_zero(cs[0]):
            cs.pop(0)
            self.off += 1
        if not cs:
            self.off = self.prec

    # -- constructors -----------------------------------------------------------

    @staticmethod
    def zero(prec: int, ram: int = 1) -> "Series":
        return Series([], prec, prec, ram)

    @staticmethod
    def const(c, prec: int, ram: int = 1) -> "Series":
        return Series([c], 0, prec, ram)

    @staticmethod
    def x_power(k: int, prec: int, ram: int = 1) -> "Series":
        return Series([QQ(1)], k, prec, ram)

    @staticmethod
    def from_poly(p: UniPoly, prec: int) -> "Series":
        return Series(list(p.coeffs), 0, prec)

    # -- queries ------------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def valuation(self):
        """Leading exponent as a rational (None for an identically zero truncation)."""
        if not self.coeffs:
            return None
        return qq(self.off, self.ram)

    def __getitem__(self, k: int):
        """Coefficient of x**(k/ram); raises if beyond the stated precision."""
        if k >= self.prec:
            raise TruncationTooSmall(f"coefficient {k} >= prec {self.prec}")
        i = k - self.off
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return QQ(0)

    def coeff_at(self, e) -> object:
        """Coefficient at rational exponent e."""
        e = as_qq(e)
        k = e * self.ram
        if den(k) != 1:
            return QQ(0)
        return self[int(k)]

    def is_rational_coeffs(self) -> bool:
        return all(is_rat(c) for c in self.coeffs)

    # -- lattice alignment ----------------------------------------------------------

    def with_ram(self, ram: int) -> "Series":
        if ram == self.ram:
            return self
        if ram % self.ram:
            raise ValueError("ramification refinement must be a multiple")
        s = ram // self.ram
        cs = []
        for c in self.coeffs:
            cs.append(c)
            cs.extend([QQ(0)] * (s - 1))
        if cs:
            del cs[len(cs) - (s - 1) :]
        return Series(cs, self.off * s, self.prec * s, ram)

    @staticmethod
    def _common(a: "Series", b: "Series"):
        r = ilcm(a.ram, b.ram)
        return a.with_ram(r), b.with_ram(r)

    # -- ring operations ---------------------------------------------------------------

    def __add__(self, other):
        if is_scalar(other) or isinstance(other, int):
            other = Series.const(other if not isinstance(other, int) else QQ(other), self.prec, self.ram)
        if not isinstance(other, Series):
            return NotImplemented
        a, b = Series._common(self, other)
        prec = min(a.prec, b.prec)
        if a.is_zero():
            return Series(list(b.coeffs), b.off, prec, b.ram)
        if b.is_zero():
            return Series(list(a.coeffs), a.off, prec, a.ram)
        off = min(a.off, b.off)
        top = min(prec, max(a.off + len(a.coeffs), b.off + len(b.coeffs)))
        cs = [QQ(0)] * max(0, top - off)
        for i, c in enumerate(a.coeffs):
            k = a.off + i - off
            if k < len(cs):
                cs[k] = cs[k] + c
        for i, c in enumerate(b.coeffs):
            k = b.off + i - off
            if k < len(cs):
                cs[k] = cs[k] + c
        return Series(cs, off, prec, a.ram)

    __radd__ = __add__

    def __neg__(self):
        return Series([-c for c in self.coeffs], self.off, self.prec, self.ram)

    def __sub__(self, other):
        if is_scalar(other) or isinstance(other, int):
            other = Series.const(other if not isinstance(other, int) else QQ(other), self.prec, self.ram)
        return self.__add__(-other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if is_scalar(other) or isinstance(other, int):
            if (isinstance(other, int) and other == 0) or s_is_zero(other if not isinstance(other, int) else QQ(other)):
                return Series.zero(self.prec, self.ram)
            return Series([c * other for c in self.coeffs], self.off, self.prec, self.ram)
        if not isinstance(other, Series):
            return NotImplemented
        a, b = Series._common(self, other)
        # truncation: result valid to min(prec_a + off_b, prec_b + off_a)
        prec = min(a.prec + b.off, b.prec + a.off)
        if a.is_zero() or b.is_zero():
            return Series.zero(prec, a.ram)
        n_terms = prec - (a.off + b.off)
        ca = a.coeffs[:n_terms]
        cb = b.coeffs[:n_terms]
        if a.is_rational_coeffs() and b.is_rational_coeffs():
            cs = _mul_rat_lists(ca, cb)
        else:
            cs = [QQ(0)] * (len(ca) + len(cb) - 1)
            for i, x in enumerate(ca):
                if not s_is_zero(x):
                    for j, y in enumerate(cb):
                        if not s_is_zero(y):
                            cs[i + j] = cs[i + j] + x * y
        return Series(cs, a.off + b.off, prec, a.ram)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Series":
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return Series.const(QQ(1), self.prec, self.ram)
        r = None
        base = self
        while k:
            if k & 1:
                r = base if r is None else r * base
            k >>= 1
            if k:
                base = base * base
        return r

    def inverse(self) -> "Series":
        """Multiplicative inverse; leading coefficient must be a unit."""
        if self.is_zero():
            raise DivisionByZeroSeries("inverting an identically-zero truncation")
        n = self.prec - self.off  # number of needed terms
        a0 = self.coeffs[0]
        inv0 = 1 / a0 if is_rat(a0) else a0.inverse()
        out = [inv0]
        for k in range(1, n):
            acc = QQ(0)
            for j in range(1, min(k, len(self.coeffs) - 1) + 1):
                aj = self.coeffs[j]
                if not s_is_zero(aj):
                    acc = acc + aj * out[k - j]
            out.append(-inv0 * acc)
        return Series(out, -self.off, self.prec - 2 * self.off, self.ram)

    def __truediv__(self, other):
        if is_scalar(other) or isinstance(other, int):
            inv = 1 / as_qq(other) if (is_rat(other) or isinstance(other, int)) else other.inverse()
            return self * inv
        if not isinstance(other, Series):
            return NotImplemented
        return self * other.inverse()

    def derivative(self) -> "Series":
        """d/dx respecting fractional exponents."""
        cs = []
        for i, c in enumerate(self.coeffs):
            e = qq(self.off + i, self.ram)
            cs.append(c * e)
        out = Series(cs, self.off - self.ram, self.prec - self.ram, self.ram)
        return out

    def integral(self) -> "Series":
        """Antiderivative with zero constant; fails on an x**(-1) term."""
        cs = []
        for i, c in enumerate(self.coeffs):
            e = qq(self.off + i, self.ram) + 1
            if e == 0:
                if s_is_zero(c):
                    cs.append(QQ(0))
                    continue
                raise ValueError("x**(-1) term has no series antiderivative")
            cs.append(c / e if is_rat(c) else c * (1 / e))
        return Series(cs, self.off + self.ram, self.prec + self.ram, self.ram)

    def rational_power(self, alpha) -> "Series":
        """self**alpha for rational alpha; requires leading term 1*x^0.

        Solves w' = alpha * (s'/s) * w term by term, so the result is the
        principal branch with constant term 1.
        """
        if self.is_zero() or self.off != 0 or not (self.coeffs[0] == 1):
            raise ValueError("rational_power needs a series with constant term 1")
        alpha = as_qq(alpha) if not isinstance(alpha, Series) else alpha
        n = self.prec
        s = self.coeffs
        out = [QQ(1)]
        # w_k = (1/k) * sum_{j=1}^{k} (alpha*j - (k - j)) * s_j * w_{k-j}
        for k in range(1, n):
            acc = QQ(0)
            for j in range(1, k + 1):
                sj = s[j] if j < len(s) else QQ(0)
                if not (sj == 0):
                    acc = acc + (alpha * j - (k - j)) * sj * out[k - j]
            out.append(acc / k)
        return Series(out, 0, n, self.ram)

    def compose(self, inner: "Series") -> "Series":
        """self(inner(x)); requires unramified self with off >= 0 and val(inner) >= 1."""
        if self.ram != 1 or (self.off < 0 and not self.is_zero()):
            raise ValueError("compose requires a plain Taylor outer series")
        if not inner.is_zero() and inner.valuation() < 1:
            raise ValueError("inner series must have positive valuation")
        out = Series.zero(inner.prec, inner.ram)
        for c in reversed(list(self.taylor_coeffs())):
            out = out * inner + c
        if not inner.is_zero():
            # outer truncation error is O(inner**prec_outer)
            out = out.truncate(min(out.prec, self.prec * inner.off))
        return out

    def taylor_coeffs(self):
        """Dense coefficients c_0..c_{prec-1} (ram must be 1, off >= 0)."""
        assert self.ram == 1 and (self.off >= 0 or self.is_zero())
        out = [QQ(0)] * self.prec
        for i, c in enumerate(self.coeffs):
            if self.off + i < self.prec:
                out[self.off + i] = c
        return out

    def truncate(self, prec: int) -> "Series":
        if prec >= self.prec:
            return self
        return Series(self.coeffs[: max(0, prec - self.off)], self.off, prec, self.ram)

    def shift_exponent(self, k: int) -> "Series":
        """Multiply by x**(k/ram)."""
        return Series(list(self.coeffs), self.off + k, self.prec + k, self.ram)

    def max_nonzero_exponent_below(self, bound: int):
        for i in range(len(self.coeffs) - 1, -1, -1):
            if not s_is_zero(self.coeffs[i]) and self.off + i < bound:
                return self.off + i
        return None

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        a, b = Series._common(self, other)
        d = a - b
        return d.is_zero()

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs[:8]):
            if s_is_zero(c):
                continue
            e = qq(self.off + i, self.ram)
            terms.append(f"{c}*x^{e}")
        more = "..." if len(self.coeffs) > 8 else ""
        return f"Series({' + '.join(terms) or '0'}{more}; O(x^{qq(self.prec, self.ram)}))"


def _mul_rat_lists(a: list, b: list) -> list:
    da = 1
    for c in a:
        da = ilcm(da, den(c))
    db = 1
    for c in b:
        db = ilcm(db, den(c))
    ia = [num(c) * (da // den(c)) for c in a]
    ib = [num(c) * (db // den(c)) for c in b]
    prod = intpoly.mul_int(ia, ib)
    d = da * db
    return [qq(c, d) for c in prod]


def poly_series_at(p: UniPoly, z0, prec: int) -> Series:
    """Series of p(z) in x = z - z0."""
    return Series(list(p.shift(z0).coeffs), 0, prec)


def ratfunc_series_at(rf, z0, prec: int) -> Series:
    """Series of a RatFunc at an ordinary point of it (den(z0) != 0)."""
    n = poly_series_at(rf.num, z0, prec)
    d = poly_series_at(rf.den, z0, prec)
    if d.is_zero() or d.off > 0:
        raise DivisionByZeroSeries("expansion at a pole")
    return n * d.inverse()
