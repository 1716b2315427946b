"""Polynomial factorization, backed by sympy's exact factor engine.

Univariate factorization over Q (optionally refined over one quadratic
extension) plus factorization of polynomials in an auxiliary variable f with
coefficients in Q(z) or Q(sqrt(3))(z).  Everything is converted to sympy only
inside this module; the rest of the package never sees sympy objects.
"""

from __future__ import annotations

import sympy

from .errors import IrreducibilityUndetermined
from .rationals import QQ, den, num, qq
from .scalars import QuadElt, canonical_sqrt_field, is_rat, sqrt_scalar
from .unipoly import UniPoly

_FACTOR_DEGREE_LIMIT = 600


def _to_sympy_uni(p: UniPoly, x):
    expr = 0
    for i, c in enumerate(p.coeffs):
        if is_rat(c):
            sc = sympy.Rational(num(c), den(c))
        else:
            sc = sympy.Rational(num(c.a), den(c.a)) + sympy.Rational(
                num(c.b), den(c.b)
            ) * sympy.sqrt(c.D)
        expr += sc * x**i
    return expr


def _from_sympy_poly(p, x, var: str, D: int | None = None) -> UniPoly:
    poly = sympy.Poly(p, x)
    coeffs = [QQ(0)] * (poly.degree() + 1)
    for (e,), c in poly.terms():
        coeffs[e] = _from_sympy_scalar(c, D)
    return UniPoly(coeffs, var)


def _from_sympy_scalar(c, D: int | None = None):
    c = sympy.nsimplify(c) if not c.is_Rational else c
    if c.is_Rational:
        return qq(int(c.p), int(c.q))
    if D is None:
        raise IrreducibilityUndetermined(f"unexpected irrational coefficient {c}")
    # c = a + b*sqrt(D)
    expanded = sympy.expand(c)
    a = expanded.coeff(sympy.sqrt(D), 0)
    b = expanded.coeff(sympy.sqrt(D), 1)
    if not (a.is_Rational and b.is_Rational):
        raise IrreducibilityUndetermined(f"coefficient {c} not in Q(sqrt({D}))")
    return QuadElt.make(qq(int(a.p), int(a.q)), qq(int(b.p), int(b.q)), D)


def factor_uni(p: UniPoly, allow_quad_ext: bool = False) -> list[tuple[UniPoly, int]]:
    """Irreducible factorization over Q; monic factors, content dropped.

    With allow_quad_ext, quadratic factors are split over the quadratic field
    generated by their roots.  Factors of degree > 2 are never refined.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if p.degree > _FACTOR_DEGREE_LIMIT:
        raise IrreducibilityUndetermined(f"degree {p.degree} exceeds limit")
    if p.degree == 0:
        return []
    x = sympy.Symbol("x")
    _, fac = sympy.factor_list(sympy.Poly(_to_sympy_uni(p, x), x, domain="QQ"))
    out = []
    for f, mult in fac:
        q = _from_sympy_poly(f.as_expr(), x, p.var).monic()
        if allow_quad_ext and q.degree == 2:
            out.extend((lin, mult) for lin in _split_quadratic(q))
        else:
            out.append((q, mult))
    out.sort(key=lambda fm: (fm[0].degree, repr(fm[0])))
    return out


def _split_quadratic(q: UniPoly) -> list[UniPoly]:
    """Split a monic quadratic irreducible over Q into linears over Q(sqrt(D))."""
    b, c = q[1], q[0]
    disc = b * b - 4 * c
    root = sqrt_scalar(disc)
    if root is None:  # pragma: no cover - sqrt_scalar always succeeds on rationals
        return [q]
    r1 = (-b + root) / 2
    r2 = (-b - root) / 2
    one = QQ(1)
    return [UniPoly([-r1, one], q.var), UniPoly([-r2, one], q.var)]


def rational_roots(p: UniPoly) -> list:
    """All rational roots (with multiplicity collapsed) of a rational UniPoly."""
    roots = []
    for f, _ in factor_uni(p):
        if f.degree == 1:
            roots.append(-f[0])
    return roots


def quadratic_field_of(q: UniPoly) -> int | None:
    """Squarefree D with roots of the monic quadratic q in Q(sqrt(D))."""
    if q.degree != 2:
        return None
    b, c = q[1], q[0]
    disc = b * b - 4 * c
    D, _ = canonical_sqrt_field(disc)
    return D


# ---------------------------------------------------------------------------
# factorization in Q(z)[f] / Q(sqrt(3))(z)[f]
# ---------------------------------------------------------------------------


def factor_in_f(coeffs: list, sqrt3: bool = False) -> list[list]:
    """Factor sum(coeffs[k](z) * f**k) into irreducibles of Q(z)[f].

    ``coeffs`` are UniPoly in z (already denominator-cleared).  Returns the
    non-constant irreducible factors, each as a list of UniPoly-in-z
    coefficients against powers of f.  With sqrt3=True the factorization is
    taken over Q(sqrt(3)) instead of Q.
    """
    z, f = sympy.symbols("z f")
    expr = 0
    for k, c in enumerate(coeffs):
        expr += _to_sympy_uni(c, z) * f**k
    if sqrt3:
        _, fac = sympy.factor_list(expr, f, z, extension=sympy.sqrt(3))
    else:
        _, fac = sympy.factor_list(expr, f, z)
    out = []
    D = 3 if sqrt3 else None
    for g, _mult in fac:
        pg = sympy.Poly(g, f)
        if pg.degree() < 1:
            continue
        cs = []
        for k in range(pg.degree() + 1):
            ck = sympy.expand(pg.nth(k))
            cs.append(_from_sympy_bivar_coeff(ck, z, D))
        out.append(cs)
    return out


def _from_sympy_bivar_coeff(expr, z, D) -> UniPoly:
    poly = sympy.Poly(expr, z)
    coeffs = [QQ(0)] * (poly.degree() + 1 if poly.degree() >= 0 else 1)
    for (e,), c in poly.terms():
        coeffs[e] = _from_sympy_scalar(c, D)
    return UniPoly(coeffs, "z")
