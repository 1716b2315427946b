"""Exact generalized hypergeometric 3F2 operators.

The operator annihilating 3F2(a1,a2,a3; b1,b2 | z) is
theta (theta + b1 - 1)(theta + b2 - 1) - z (theta + a1)(theta + a2)(theta + a3)
with theta = z d/dz; it is expanded exactly into the Dz basis.  The 1/z
orientation transports it through z -> 1/z.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diffop import DiffOp
from .rationals import QQ, as_qq, qq
from .ratfunc import RatFunc
from .unipoly import UniPoly


@dataclass(frozen=True)
class Hypergeometric3F2:
    upper: tuple
    lower: tuple
    argument: str  # "z" or "1/z"

    def tag(self) -> str:
        up = ",".join(str(a) for a in self.upper)
        lo = ",".join(str(b) for b in self.lower)
        return f"3F2({up};{lo}|{self.argument})"

    def operator(self) -> DiffOp:
        op = hypergeometric_operator_3f2(self.upper, self.lower)
        if self.argument == "1/z":
            op = op.transform_reciprocal()
        return op


def _theta_poly_to_op(coeffs: list) -> list[UniPoly]:
    """sum c_k theta^k as Dz-basis coefficients [p_0(z), ..., p_n(z)].

    Uses theta^k = sum_j S(k,j) z^j Dz^j (Stirling numbers of the 2nd kind).
    """
    n = len(coeffs) - 1
    # Stirling numbers S(k, j)
    S = [[QQ(0)] * (n + 1) for _ in range(n + 1)]
    S[0][0] = QQ(1)
    for k in range(1, n + 1):
        for j in range(1, k + 1):
            S[k][j] = S[k - 1][j - 1] + S[k - 1][j] * j
    out = [UniPoly.zero("z") for _ in range(n + 1)]
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        for j in range(k + 1):
            if S[k][j] != 0:
                out[j] = out[j] + UniPoly.monomial(c * S[k][j], j, "z")
    return out


def _poly_in_theta(roots: list) -> list:
    """Coefficients of prod (theta + r) as a polynomial in theta."""
    cs = [QQ(1)]
    for r in roots:
        nxt = [QQ(0)] * (len(cs) + 1)
        for i, c in enumerate(cs):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] + c * as_qq(r)
        cs = nxt
    return cs


def hypergeometric_operator_3f2(upper, lower) -> DiffOp:
    upper = [as_qq(a) for a in upper]
    lower = [as_qq(b) for b in lower]
    left = _poly_in_theta([QQ(0)] + [b - 1 for b in lower])
    right = _poly_in_theta(list(upper))
    Lc = _theta_poly_to_op(left)
    Rc = _theta_poly_to_op(right)
    z = UniPoly.gen("z")
    coeffs = []
    n = max(len(Lc), len(Rc))
    for j in range(n):
        lj = Lc[j] if j < len(Lc) else UniPoly.zero("z")
        rj = Rc[j] if j < len(Rc) else UniPoly.zero("z")
        coeffs.append(lj - z * rj)
    return DiffOp(coeffs)
