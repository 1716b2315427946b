"""Scalars: exact rationals and degree-2 extensions Q(sqrt(D)).

A scalar is either a plain rational (the fast path: raw mpq/Fraction) or a
``QuadElt`` a + b*sqrt(D) with D a squarefree integer, D not in {0, 1}.
Negative D is allowed (complex quadratic fields arise from indicial roots).
The tower is capped at degree 2: mixing two different D values raises
``FieldMixError``.  Module-level functions (s_add, s_mul, ...) dispatch on
the representation so rational-only computations never touch QuadElt.
"""

from __future__ import annotations

from .errors import FieldMixError
from .rationals import (
    QQ,
    as_qq,
    den,
    is_rat,
    num,
    qq,
    rat_sqrt_exact,
    squarefree_decompose,
)


class QuadElt:
    """a + b*sqrt(D), D squarefree integer, b != 0 kept as invariant."""

    __slots__ = ("a", "b", "D")

    def __init__(self, a, b, D: int):
        self.a = as_qq(a)
        self.b = as_qq(b)
        self.D = D

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def make(a, b, D: int):
        """Build a + b*sqrt(D), collapsing to a rational when possible."""
        a = as_qq(a)
        b = as_qq(b)
        if b == 0 or D == 0:
            return a
        if D == 1:
            return a + b
        return QuadElt(a, b, D)

    def conjugate(self):
        return QuadElt(self.a, -self.b, self.D)

    def norm(self):
        return self.a * self.a - self.D * self.b * self.b

    def trace(self):
        return 2 * self.a

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if is_rat(other):
            return QuadElt(self.a + other, self.b, self.D)
        if isinstance(other, QuadElt):
            if other.D != self.D:
                raise FieldMixError(f"sqrt({self.D}) vs sqrt({other.D})")
            return QuadElt.make(self.a + other.a, self.b + other.b, self.D)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return QuadElt(-self.a, -self.b, self.D)

    def __sub__(self, other):
        return self.__add__(-other if isinstance(other, QuadElt) else -as_qq(other))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if is_rat(other):
            if other == 0:
                return QQ(0)
            return QuadElt(self.a * other, self.b * other, self.D)
        if isinstance(other, QuadElt):
            if other.D != self.D:
                raise FieldMixError(f"sqrt({self.D}) vs sqrt({other.D})")
            return QuadElt.make(
                self.a * other.a + self.D * self.b * other.b,
                self.a * other.b + self.b * other.a,
                self.D,
            )
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero QuadElt norm")
        return QuadElt.make(self.a / n, -self.b / n, self.D)

    def __truediv__(self, other):
        if is_rat(other):
            return QuadElt(self.a / other, self.b / other, self.D)
        if isinstance(other, QuadElt):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        r = QQ(1)
        base = self
        while k:
            if k & 1:
                r = base * r
            k >>= 1
            if k:
                base = base * base
        return r

    def __eq__(self, other):
        if is_rat(other):
            return False
        if isinstance(other, QuadElt):
            return self.D == other.D and self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.D))

    def __float__(self):
        return float(self.a) + float(self.b) * (abs(self.D) ** 0.5) * (
            1 if self.D > 0 else float("nan")
        )

    def __complex__(self):
        if self.D > 0:
            return complex(float(self.a) + float(self.b) * self.D**0.5)
        return complex(float(self.a), float(self.b) * (-self.D) ** 0.5)

    def __repr__(self):
        return f"({self.a}{'+' if self.b >= 0 else '-'}{abs(self.b)}*sqrt({self.D}))"


# ---------------------------------------------------------------------------
# generic scalar operations (Scalar = rational | QuadElt)
# ---------------------------------------------------------------------------


def is_scalar(x) -> bool:
    return is_rat(x) or isinstance(x, QuadElt)


def s_is_zero(x) -> bool:
    return is_rat(x) and x == 0


def s_is_rational(x) -> bool:
    return is_rat(x)


def s_field(x):
    """Field discriminant tag: None for Q, else squarefree D."""
    return x.D if isinstance(x, QuadElt) else None


def join_field(d1, d2):
    """Compositum tag of two field tags; FieldMixError if degree > 2."""
    if d1 is None:
        return d2
    if d2 is None or d1 == d2:
        return d1
    raise FieldMixError(f"sqrt({d1}) vs sqrt({d2})")


def s_conj(x):
    """Galois conjugate over Q (identity on rationals)."""
    return x.conjugate() if isinstance(x, QuadElt) else x


def s_inv(x):
    if isinstance(x, QuadElt):
        return x.inverse()
    return 1 / as_qq(x)


def s_div(x, y):
    if isinstance(x, QuadElt) or isinstance(y, QuadElt):
        if is_rat(x):
            return y.inverse() * x
        return x / y
    return as_qq(x) / as_qq(y)


def s_rational_part(x):
    return x.a if isinstance(x, QuadElt) else as_qq(x)


def sqrt_scalar(x, D_hint=None):
    """Exact square root of a scalar inside a degree-<=2 field, or None.

    For rational x: returns a rational root, or sqrt in Q(sqrt(D)) with D the
    squarefree part of x (only if D_hint is None or matches).
    For QuadElt: attempts the root inside the same field.
    """
    if is_rat(x):
        x = as_qq(x)
        r = rat_sqrt_exact(x)
        if r is not None:
            return r
        # x = (n/d): sqrt = sqrt(n*d)/d = f*sqrt(s)/d
        nd = num(x) * den(x)
        s, f = squarefree_decompose(nd)
        if D_hint is not None and D_hint != s:
            return None
        return QuadElt.make(0, qq(f, den(x)), s)
    # QuadElt: solve (u + v*sqrt(D))^2 = a + b*sqrt(D)
    a, b, D = x.a, x.b, x.D
    n = rat_sqrt_exact(a * a - D * b * b)
    if n is None:
        return None
    for s in (n, -n):
        u2 = (a + s) / 2
        u = rat_sqrt_exact(u2)
        if u is not None and u != 0:
            v = b / (2 * u)
            cand = QuadElt.make(u, v, D)
            # guard: v must be rational-consistent (it is by construction)
            if _s_mul(cand, cand) == x:
                return cand
        if u2 == 0 and b == 0:
            return rat_sqrt_exact(a)
    return None


def _s_mul(x, y):
    if isinstance(x, QuadElt):
        return x * y
    if isinstance(y, QuadElt):
        return y * x
    return as_qq(x) * as_qq(y)


def s_to_complex(x) -> complex:
    if isinstance(x, QuadElt):
        return complex(x)
    return complex(float(as_qq(x)), 0.0)


def canonical_sqrt_field(q) -> tuple[int, object]:
    """For rational q != 0 return (D, c) with sqrt(q) = c*sqrt(D), D squarefree.

    c is rational; D = 1 means q is a perfect square.
    """
    q = as_qq(q)
    nd = num(q) * den(q)
    s, f = squarefree_decompose(nd)
    return s, qq(f, den(q))
