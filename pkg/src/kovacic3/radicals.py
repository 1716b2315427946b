"""Closed-form bookkeeping for hyperexponential prefactors.

A Prefactor represents exp(-int w) for rational w, split as a product of
rational powers of irreducible polynomials, exp of a rational function, and
exp of a polynomial integral:

    exp(-int w) = prod q_i^(-g_i) * exp(-(B/U)) * exp(-int poly)

found by solving w - poly = sum g_i q_i'/q_i + (B/U)' as an exact linear
system.  When the residues are not rational the factor stays symbolic
(exact flag off); the Fuchsian finite-group pipeline never hits that case.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .factorization import factor_uni
from .rationals import QQ, is_rat
from .ratfunc import RatFunc
from .unipoly import UniPoly


@dataclass
class Prefactor:
    """exp(-int w) with w rational."""

    w: RatFunc
    powers: list = field(default_factory=list)  # (irreducible UniPoly, rational exponent of the PRODUCT form)
    exp_rational: RatFunc | None = None
    exp_polyint: UniPoly | None = None
    exact: bool = True

    def is_one(self) -> bool:
        return (
            not self.powers
            and (self.exp_rational is None or self.exp_rational.is_zero())
            and (self.exp_polyint is None or self.exp_polyint.is_zero())
        )

    def as_text(self) -> str:
        if self.is_one():
            return "1"
        if not self.exact:
            return f"exp(-int({self.w}))"
        parts = []
        for q, e in self.powers:
            parts.append(f"({q})^({e})")
        if self.exp_polyint is not None and not self.exp_polyint.is_zero():
            parts.append(f"exp(-({self.exp_polyint}))")
        if self.exp_rational is not None and not self.exp_rational.is_zero():
            parts.append(f"exp(-({self.exp_rational}))")
        return " * ".join(parts) if parts else "1"

    def logderivative(self) -> RatFunc:
        return -self.w

    def to_payload(self) -> dict:
        return {
            "formula": self.as_text(),
            "exact": self.exact,
            "minus_log_derivative": repr(self.w),
        }


def prefactor_from(w: RatFunc) -> Prefactor:
    """Build exp(-int w) in closed form when the residues are rational."""
    if w.is_zero():
        return Prefactor(w=w)
    var = w.var
    poly, rem = w.num.divmod(w.den)
    polyint = _poly_integral(poly)
    den = w.den
    if den.degree == 0:
        return Prefactor(
            w=w,
            exp_polyint=None if polyint.is_zero() else polyint,
        )
    fac = factor_uni(den)
    U = UniPoly.one(var)
    for q, e in fac:
        U = U * q ** (e - 1)
    # unknowns: gamma_i per factor, B coefficients (deg B < deg U)
    # equation (times den): rem = sum gamma_i q_i' * (den/q_i) + (B' U - B U') * (den/U^2)
    nb = max(U.degree, 0)
    # rem/den = sum g q'/q + (B'U - BU')/U^2; multiply through by den*U:
    # rem*U = sum g q' (den/q) U + (B'U - BU') * (den/U)
    target = rem * U
    cols = [q.derivative() * den.exact_div(q) * U for q, _e in fac]
    dU = den.exact_div(U)
    bcols = []
    for k in range(nb):
        bk = UniPoly.monomial(QQ(1), k, var)
        bcols.append((bk.derivative() * U - bk * U.derivative()) * dU)
    allcols = cols + bcols
    sol = _solve_linear_poly(allcols, target)
    if sol is None:
        return Prefactor(w=w, exact=False, exp_polyint=None if polyint.is_zero() else polyint)
    gammas = sol[: len(fac)]
    bco = sol[len(fac):]
    B = UniPoly(list(bco), var)
    powers = [(q, -g) for (q, _e), g in zip(fac, gammas) if g != 0]
    h = RatFunc(B, U) if not B.is_zero() else None
    return Prefactor(
        w=w,
        powers=powers,
        exp_rational=h,
        exp_polyint=None if polyint.is_zero() else polyint,
        exact=True,
    )


def _solve_linear_poly(cols: list[UniPoly], target: UniPoly):
    """Solve sum x_j cols_j = target for rational x; None if inconsistent."""
    deg = max([c.degree for c in cols if not c.is_zero()] + [target.degree, 0])
    deg = int(deg)
    rows = []
    for k in range(deg + 1):
        rows.append([c[k] for c in cols] + [target[k]])
    # Gaussian elimination with an augmented column
    ncols = len(cols)
    from .semiinv import nullspace

    ns = nullspace(rows, ncols + 1)
    for v in ns:
        if v[-1] != 0:
            lam = v[-1]
            return [-x / lam for x in v[:-1]]
    return None


def _poly_integral(p: UniPoly) -> UniPoly:
    cs = [QQ(0)]
    for i, c in enumerate(p.coeffs):
        cs.append(c / (i + 1) if is_rat(c) else c * QQ(1) / (i + 1))
    return UniPoly(cs, p.var)
