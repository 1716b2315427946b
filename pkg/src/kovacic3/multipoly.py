"""Sparse multivariate polynomials.

Keys are exponent tuples, values are coefficients in any commutative ring
(scalars for invariant theory, RatFunc for jet computations); zero
coefficients are never stored.  Coefficient-ring zero tests go through
``_czero`` so scalars and RatFunc both work.
"""

from __future__ import annotations

from .rationals import QQ, is_rat
from .ratfunc import RatFunc
from .scalars import is_scalar, s_is_zero


def _czero(c) -> bool:
    if isinstance(c, RatFunc):
        return c.is_zero()
    if is_scalar(c):
        return s_is_zero(c)
    return c == 0


class MultiPoly:
    __slots__ = ("terms", "nvars")

    def __init__(self, terms: dict | None = None, nvars: int = 3):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for e, c in terms.items():
                if isinstance(c, int):
                    c = QQ(c)
                if not _czero(c):
                    self.terms[tuple(e)] = c

    @staticmethod
    def zero(nvars: int = 3) -> "MultiPoly":
        return MultiPoly({}, nvars)

    @staticmethod
    def const(c, nvars: int = 3) -> "MultiPoly":
        return MultiPoly({(0,) * nvars: c}, nvars)

    @staticmethod
    def var(i: int, nvars: int = 3) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return MultiPoly({tuple(e): QQ(1)}, nvars)

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=float("-inf"))

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def coeff(self, e):
        return self.terms.get(tuple(e), QQ(0))

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            if is_scalar(other) or isinstance(other, (int, RatFunc)):
                other = MultiPoly.const(other, self.nvars)
            else:
                return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if _czero(s):
                out.pop(e, None)
            else:
                out[e] = s
        r = MultiPoly.__new__(MultiPoly)
        r.nvars = self.nvars
        r.terms = out
        return r

    __radd__ = __add__

    def __neg__(self):
        r = MultiPoly.__new__(MultiPoly)
        r.nvars = self.nvars
        r.terms = {e: -c for e, c in self.terms.items()}
        return r

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            if is_scalar(other) or isinstance(other, (int, RatFunc)):
                other = MultiPoly.const(other, self.nvars)
            else:
                return NotImplemented
        return self.__add__(-other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            if is_scalar(other) or isinstance(other, (int, RatFunc)):
                if _czero(other if not isinstance(other, int) else QQ(other)):
                    return MultiPoly.zero(self.nvars)
                r = MultiPoly.__new__(MultiPoly)
                r.nvars = self.nvars
                r.terms = {e: c * other for e, c in self.terms.items()}
                return r
            return NotImplemented
        out: dict = {}
        small, big = (self.terms, other.terms) if len(self.terms) < len(other.terms) else (other.terms, self.terms)
        for e1, c1 in small.items():
            for e2, c2 in big.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e)
                p = c1 * c2
                s = p if s is None else s + p
                if _czero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        r = MultiPoly.__new__(MultiPoly)
        r.nvars = self.nvars
        r.terms = out
        return r

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative power")
        r = MultiPoly.const(QQ(1), self.nvars)
        base = self
        while k:
            if k & 1:
                r = r * base
            k >>= 1
            if k:
                base = base * base
        return r

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def diff(self, i: int) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = c * e[i]
        return MultiPoly(out, self.nvars)

    def eval(self, values):
        """Full evaluation at a point (len(values) == nvars)."""
        total = None
        for e, c in self.terms.items():
            t = c
            for i, ei in enumerate(e):
                if ei:
                    vi = values[i]
                    p = vi
                    for _ in range(ei - 1):
                        p = p * vi
                    t = t * p
            total = t if total is None else total + t
        if total is None:
            return QQ(0)
        return total

    def compose_linear(self, M) -> "MultiPoly":
        """Substitute X_i -> sum_j M[i][j] * Y_j (M rows over the coeff ring)."""
        forms = []
        for i in range(self.nvars):
            forms.append(MultiPoly({tuple(int(k == j) for k in range(self.nvars)): M[i][j]
                                    for j in range(self.nvars)}, self.nvars))
        out = MultiPoly.zero(self.nvars)
        pow_cache = [{0: MultiPoly.const(QQ(1), self.nvars)} for _ in range(self.nvars)]
        for e, c in self.terms.items():
            t = MultiPoly.const(c, self.nvars)
            for i, ei in enumerate(e):
                if ei:
                    cache = pow_cache[i]
                    if ei not in cache:
                        k0 = max(k for k in cache if k <= ei)
                        p = cache[k0]
                        for _ in range(k0, ei):
                            p = p * forms[i]
                            cache[k0 + 1] = p
                            k0 += 1
                    t = t * cache[ei]
            out = out + t
        return out

    def map_coeffs(self, fn) -> "MultiPoly":
        return MultiPoly({e: fn(c) for e, c in self.terms.items()}, self.nvars)

    def __repr__(self):
        if not self.terms:
            return "0"
        names = [f"X{i+1}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"{names[i]}^{k}" if k > 1 else names[i] for i, k in enumerate(e) if k
            )
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(parts)
