"""Invariant-theoretic toolkit for the finite subgroups of SL3.

Covariant operators (Hessian, bordered Hessian, Jacobian of three ternary
forms), the reference generator polynomials of the twelve groups' semi-
invariant algebras, the product-of-lines test for cubics, and the scalar
normalizations that make each group's defining syzygy vanish.

Two printed constants in the source material disagree (24300 vs 23400 for
the A6 degree-30 covariant) and one syzygy term lacks its exponent; the
reference self-test resolves both and the table stores the verified values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import NoLinearCombination, SyzygyUnsatisfiable
from .multipoly import MultiPoly
from .rationals import QQ, as_qq, is_rat, qq, rat_nth_root_exact
from .scalars import QuadElt, is_scalar, s_div, s_is_zero, sqrt_scalar
from .unipoly import UniPoly, poly_gcd
from .factorization import factor_uni, rational_roots


def hessian_det(P: MultiPoly) -> MultiPoly:
    """det of the 3x3 matrix of second partials."""
    H = [[P.diff(i).diff(j) for j in range(3)] for i in range(3)]
    return _det3(H)


def _det3(M):
    return (
        M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
        - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
        + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])
    )


def bordered_hessian(P1: MultiPoly, P2: MultiPoly) -> MultiPoly:
    """4x4 bordered determinant: second partials of P1, bordered by the
    gradient of P2 (last row/column), zero corner.

    The argument roles are fixed by requiring the Klein-quartic syzygy to
    hold on the reference chain; the opposite convention fails it.
    """
    H = [[P1.diff(i).diff(j) for j in range(3)] for i in range(3)]
    g = [P2.diff(i) for i in range(3)]
    # Laplace over the last row/column
    out = MultiPoly.zero(3)
    for i in range(3):
        for j in range(3):
            minor = _det2_of(H, i, j)
            sign = QQ((-1) ** (i + j + 1))
            out = out + g[i] * g[j] * minor * sign
    return out


def _det2_of(H, i, j):
    ri = [r for r in range(3) if r != i]
    cj = [c for c in range(3) if c != j]
    return H[ri[0]][cj[0]] * H[ri[1]][cj[1]] - H[ri[0]][cj[1]] * H[ri[1]][cj[0]]


def jacobian_det(P1: MultiPoly, P2: MultiPoly, P3: MultiPoly) -> MultiPoly:
    J = [[P.diff(i) for P in (P1, P2, P3)] for i in range(3)]
    return _det3(J)


def linear_factor_test(P: MultiPoly) -> bool:
    """True iff the cubic P is a product of three independent linear forms,
    detected by H(P) = lambda * P with lambda != 0."""
    from .errors import Kovacic3Error

    if P.total_degree() != 3 or not P.is_homogeneous():
        raise NotCubic(f"degree {P.total_degree()} input")
    H = hessian_det(P)
    if H.is_zero():
        return False
    lam = None
    for e, c in H.terms.items():
        pc = P.terms.get(e)
        if pc is None:
            return False
        lam = s_div(c, pc)
        break
    return H == P * lam


class NotCubic(Exception):
    pass


# ---------------------------------------------------------------------------
# reference generators
# ---------------------------------------------------------------------------

X1 = MultiPoly.var(0)
X2 = MultiPoly.var(1)
X3 = MultiPoly.var(2)


def _mono(c, e1, e2, e3):
    return MultiPoly({(e1, e2, e3): c}, 3)


@dataclass
class GroupGenerators:
    tag: str
    gens: dict  # name -> MultiPoly
    notes: dict


@lru_cache(maxsize=1)
def covariant_table() -> dict:
    """Reference semi-invariant generators for each group class, with all
    derived covariants computed from the printed seeds."""
    table = {}

    # Klein group G168 (and G168 x C3)
    F4 = _mono(1, 3, 1, 0) + _mono(1, 0, 3, 1) + _mono(1, 1, 0, 3)
    F6 = hessian_det(F4) * qq(1, 54)
    F14 = bordered_hessian(F4, F6) * qq(1, 9)
    F21 = jacobian_det(F4, F6, F14) * qq(1, 14)
    table["G168"] = GroupGenerators(
        "G168", {"F4": F4, "F6": F6, "F14": F14, "F21": F21}, {}
    )

    # Valentiner group A6
    A6F6 = (
        _mono(9, 5, 0, 1)
        + _mono(10, 3, 3, 0)
        + _mono(-45, 2, 2, 2)
        + _mono(-135, 1, 1, 4)
        + _mono(9, 0, 5, 1)
        + _mono(27, 0, 0, 6)
    )
    A6F12 = hessian_det(A6F6) * qq(-1, 20250)
    HB30 = bordered_hessian(A6F6, A6F12)
    # the degree-30 covariant constant is resolved by the quadric syzygy
    cands = {}
    for const in (24300, 23400):
        F30c = HB30 * qq(1, const)
        F45c = jacobian_det(A6F6, A6F12, F30c) * qq(1, 4860)
        cands[const] = (F30c, F45c)
    resolved = None
    for const, (F30c, F45c) in cands.items():
        if _a6_syzygy_residual(A6F6, A6F12, F30c, F45c).is_zero():
            resolved = const
            break
    if resolved is None:  # pragma: no cover - the self-test fixes the constant
        raise SyzygyUnsatisfiable("A6 degree-30 covariant constant")
    A6F30, A6F45 = cands[resolved]
    table["A6"] = GroupGenerators(
        "A6",
        {"F6": A6F6, "F12": A6F12, "F30": A6F30, "F45": A6F45},
        {"f30_constant": resolved},
    )

    # A5 (and A5 x C3)
    A5F2 = _mono(1, 2, 0, 0) + _mono(1, 0, 1, 1)
    A5F6 = (
        _mono(8, 4, 1, 1)
        + _mono(-2, 2, 2, 2)
        + _mono(-1, 1, 5, 0)
        + _mono(-1, 1, 0, 5)
        + _mono(1, 0, 3, 3)
    )
    A5F10 = bordered_hessian(A5F2, A5F6) - A5F2 * A5F2 * A5F6 * QQ(32)
    A5F15 = jacobian_det(A5F2, A5F6, A5F10) * qq(-1, 10)
    table["A5"] = GroupGenerators(
        "A5", {"F2": A5F2, "F6": A5F6, "F10": A5F10, "F15": A5F15}, {}
    )

    # Hessian-family imprimitive groups G27..G162
    P3 = _mono(1, 1, 1, 1)
    S3 = _mono(1, 3, 0, 0) + _mono(1, 0, 3, 0) + _mono(1, 0, 0, 3)
    Q6 = _mono(1, 3, 3, 0) + _mono(1, 3, 0, 3) + _mono(1, 0, 3, 3)
    c1 = _mono(1, 3, 0, 0) - _mono(1, 0, 3, 0)
    c2 = _mono(1, 3, 0, 0) - _mono(1, 0, 0, 3)
    c3 = _mono(1, 0, 3, 0) - _mono(1, 0, 0, 3)
    R9 = c1 * c2 * c3
    table["HESSE"] = GroupGenerators(
        "HESSE", {"P3": P3, "S3": S3, "Q6": Q6, "R9": R9}, {}
    )

    # F36, H72, H216 share the sqrt(3) cubics
    s3v = sqrt_scalar(QQ(3))
    F3 = P3 * (QQ(-3) * (1 + s3v)) + S3
    Phi3 = P3 * (QQ(-3) * (1 - s3v)) + S3
    Fh6 = (bordered_hessian(F3, Phi3) + bordered_hessian(Phi3, F3)) * qq(1, 648)
    Phi12 = hessian_det(Fh6) * qq(-1, 108000)
    # sign chosen so the degree-36 syzygy of H216 holds (its arbiter)
    F12 = _exact_mp_div(bordered_hessian(Fh6, R9), Phi12 * QQ(-675))
    table["F36"] = GroupGenerators(
        "F36", {"F3": F3, "Phi3": Phi3, "F6": Fh6, "R9": R9}, {}
    )
    table["H72"] = GroupGenerators(
        "H72",
        {"Phi6": F3 * Phi3, "F6": Fh6, "R9": R9, "Phi12": Phi12},
        {},
    )
    table["H216"] = GroupGenerators(
        "H216",
        {"F6": Fh6, "R9": R9, "Phi12": Phi12, "F12": F12},
        {"f12_sign": -1},
    )
    return table


def _exact_mp_div(num: MultiPoly, den: MultiPoly) -> MultiPoly:
    """Exact division of multivariate polynomials (monomial-order reduction)."""
    out = {}
    rem = num
    # pick the lex-largest monomial of den as leader
    lead = max(den.terms)
    lc = den.terms[lead]
    while not rem.is_zero():
        e = max(rem.terms)
        c = rem.terms[e]
        de = tuple(a - b for a, b in zip(e, lead))
        if any(x < 0 for x in de):
            raise ValueError("inexact multivariate division")
        q = s_div(c, lc)
        out[de] = q
        rem = rem - MultiPoly({de: q}, 3) * den
    return MultiPoly(out, 3)


def _a6_syzygy_residual(P6, P12, P30, P45) -> MultiPoly:
    """19683 P45^2 minus its degree-90 expansion in P6, P12, P30."""
    t = {}
    terms = [
        (4, (13, 1, 0)), (80, (11, 2, 0)), (816, (9, 3, 0)), (18, (10, 0, 1)),
        (4376, (7, 4, 0)), (198, (8, 1, 1)), (13084, (5, 5, 0)), (954, (6, 2, 1)),
        (12312, (3, 6, 0)), (-198, (4, 3, 1)), (5616, (1, 7, 0)), (-162, (5, 0, 2)),
        (-5508, (2, 4, 1)), (-1944, (3, 1, 2)), (-1944, (0, 5, 1)),
        (-1458, (1, 2, 2)), (729, (0, 0, 3)),
    ]
    rhs = MultiPoly.zero(3)
    for c, (e6, e12, e30) in terms:
        rhs = rhs + P6**e6 * P12**e12 * P30**e30 * QQ(c)
    return P45 * P45 * QQ(19683) - rhs


def g168_syzygy_residual(P4, P6, P14, P21) -> MultiPoly:
    rhs = (
        P4**9 * P6 * QQ(-2048)
        + P4**6 * P6**3 * QQ(22016)
        - P14 * P4**7 * QQ(256)
        - P4**3 * P6**5 * QQ(60032)
        + P14 * P4**4 * P6**2 * QQ(1088)
        + P6**7 * QQ(1728)
        + P14 * P4 * P6**4 * QQ(1008)
        - P14**2 * P4**2 * P6 * QQ(88)
        + P14**3
    )
    return P21 * P21 - rhs


def a6_syzygy_residual(P6, P12, P30, P45) -> MultiPoly:
    return _a6_syzygy_residual(P6, P12, P30, P45)


def h216_syzygy_residuals(P6, P9, P12, P12ab) -> list[MultiPoly]:
    """[864 P9 P12 + H(P9), 6912 P12^3 - (...)]; the final term of the second
    syzygy is P12ab cubed (degree forced to 36)."""
    r1 = P9 * P12 * QQ(864) + hessian_det(P9)
    rhs = (
        P6**3 * P9**2 * QQ(1728)
        - P6**2 * P12ab**2 * QQ(3)
        + P6 * P12ab * P9**2 * QQ(2592)
        + P9**4 * QQ(186624)
        - P12ab**3 * QQ(4)
    )
    r2 = P12**3 * QQ(6912) - rhs
    return [r1, r2]


def h72_syzygy_residual(P6, P6s, P9, P12) -> MultiPoly:
    t1 = P6**3 - P6 * P6s**2 * QQ(3) - P6s**3 * QQ(2) - P9**2 * QQ(432)
    t2 = P6**3 - P6 * P6s**2 * QQ(3) + P6s**3 * QQ(2) - P9**2 * QQ(432)
    t3 = (
        P6**4
        - P6**2 * P6s**2 * QQ(3)
        + P6s**4 * QQ(2)
        + P6**2 * P12 * QQ(18)
        - P6 * P9**2 * QQ(432)
        - P6s**2 * P12 * QQ(24)
    )
    return t1 * t2 + P12 * t3 * QQ(72)


def f36_syzygy_residual(Pa3, Pb3, P6, P9) -> MultiPoly:
    """Zero iff the (a, b) branch assignment is the printed one; the
    (12 - 7 sqrt3) bracketing is fixed by homogeneity."""
    s3v = sqrt_scalar(QQ(3))
    return (
        Pa3 * Pb3**5 * (QQ(2) * (-7 + 4 * s3v))
        + Pa3**4 * P6 * s3v
        - Pa3**2 * P6 * Pb3**2 * (6 * s3v)
        + Pb3**4 * P6 * (12 - 7 * s3v)
        - Pa3**5 * Pb3 * QQ(2)
        + Pa3**2 * Pb3**2 * P6 * QQ(12)
        + P6**3 * (-8 + 4 * s3v)
        + P9**2 * (QQ(1728) * (2 - s3v))
    )


def hesse_h_normalizations() -> dict:
    """Exact identities of the sqrt(3) cubic pair under the Hessian."""
    tab = covariant_table()
    F3 = tab["F36"].gens["F3"]
    Phi3 = tab["F36"].gens["Phi3"]
    return {"H(F3)": hessian_det(F3), "H(Phi3)": hessian_det(Phi3), "F3": F3, "Phi3": Phi3}


def self_test() -> dict:
    """Exact verification of every stored identity; returns name -> bool."""
    tab = covariant_table()
    out = {}
    g = tab["G168"].gens
    out["g168_chain_F6"] = (hessian_det(g["F4"]) - g["F6"] * QQ(54)).is_zero()
    out["g168_chain_F14"] = (bordered_hessian(g["F4"], g["F6"]) - g["F14"] * QQ(9)).is_zero()
    out["g168_chain_F21"] = (jacobian_det(g["F4"], g["F6"], g["F14"]) - g["F21"] * QQ(14)).is_zero()
    out["g168_syzygy"] = g168_syzygy_residual(g["F4"], g["F6"], g["F14"], g["F21"]).is_zero()
    a = tab["A6"].gens
    out["a6_chain_F12"] = (hessian_det(a["F6"]) + a["F12"] * QQ(20250)).is_zero()
    out["a6_syzygy"] = a6_syzygy_residual(a["F6"], a["F12"], a["F30"], a["F45"]).is_zero()
    v = tab["A5"].gens
    out["a5_chain_F10"] = (
        bordered_hessian(v["F2"], v["F6"]) - v["F2"] ** 2 * v["F6"] * QQ(32) - v["F10"]
    ).is_zero()
    out["a5_chain_F15"] = (jacobian_det(v["F2"], v["F6"], v["F10"]) + v["F15"] * QQ(10)).is_zero()
    f = tab["F36"].gens
    out["f36_chain_F6"] = (
        bordered_hessian(f["F3"], f["Phi3"]) + bordered_hessian(f["Phi3"], f["F3"])
        - f["F6"] * QQ(648)
    ).is_zero()
    h = tab["H216"].gens
    out["h216_chain_Phi12"] = (hessian_det(h["F6"]) + h["Phi12"] * QQ(108000)).is_zero()
    out["h216_chain_F12"] = (
        bordered_hessian(h["F6"], h["R9"]) + h["F12"] * h["Phi12"] * QQ(675)
    ).is_zero()
    r1, r2 = h216_syzygy_residuals(h["F6"], h["R9"], h["Phi12"], h["F12"])
    out["h216_syzygy_H9"] = r1.is_zero()
    out["h216_syzygy_6912"] = r2.is_zero()
    # the printed sqrt(3) pairing holds with (a, b) = (F3, Phi3)...
    s3v = sqrt_scalar(QQ(3))
    out["f36_h_pairing"] = (
        hessian_det(f["F3"]) + f["Phi3"] * (QQ(108) * (2 + s3v))
    ).is_zero() and (
        hessian_det(f["Phi3"]) + f["F3"] * (QQ(108) * (2 - s3v))
    ).is_zero()
    # ... while the residual syzygies hold on the swapped branch, which the
    # swap-on-failure rule of the constructors selects automatically
    Pa, Pb = f["Phi3"], f["F3"]
    P6 = (bordered_hessian(Pa, Pb) + bordered_hessian(Pb, Pa)) * qq(1, 648)
    P9 = jacobian_det(Pa, Pb, P6) * s3v * qq(1, 1944)
    out["f36_syzygy"] = f36_syzygy_residual(Pa, Pb, P6, P9).is_zero()
    P12 = hessian_det(P6) * qq(-1, 108000)
    out["h72_syzygy"] = h72_syzygy_residual(P6, Pa * Pb, P9, P12).is_zero()
    return out
