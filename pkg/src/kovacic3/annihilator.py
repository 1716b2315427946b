"""Annihilators of solution-jet monomials y1^m1 * y2'^m2 * y3''^m3.

The monomial is differentiated formally in nine jet variables (three
independent solution slots, jets of order 0..2), third derivatives reduced
through the equation; a linear-dependence search over Q(z) then yields the
minimal-order annihilating operator found by the elimination.
"""

from __future__ import annotations

from math import comb

from .errors import DependencySearchOverflow, WrongOrder
from .multipoly import MultiPoly
from .rationals import QQ
from .ratfunc import RatFunc
from .diffop import DiffOp


def _jet_vars(slot: int, j: int) -> int:
    """Variable index of the j-th jet of solution slot (slot, j in 0..2)."""
    return 3 * slot + j


def _diff_jet_poly(P: MultiPoly, red: list[RatFunc]) -> MultiPoly:
    """d/dz on a jet polynomial with RatFunc coefficients.

    red = [-a0/a3, -a1/a3, -a2/a3]: y''' = red[0] y + red[1] y' + red[2] y''.
    """
    out = P.map_coeffs(lambda c: c.derivative())
    for e, c in P.terms.items():
        for slot in range(3):
            for j in range(3):
                v = _jet_vars(slot, j)
                if not e[v]:
                    continue
                base = list(e)
                base[v] -= 1
                mult = c * QQ(e[v])
                if j < 2:
                    e2 = list(base)
                    e2[_jet_vars(slot, j + 1)] += 1
                    out = out + MultiPoly({tuple(e2): mult}, 9)
                else:
                    for k in range(3):
                        rk = red[k]
                        if rk.is_zero():
                            continue
                        e2 = list(base)
                        e2[_jet_vars(slot, k)] += 1
                        out = out + MultiPoly({tuple(e2): mult * rk}, 9)
    return out


def annihilator_of_monomial(L: DiffOp, mvec) -> DiffOp:
    """Minimal-order operator annihilating y1^m1 * (y2')^m2 * (y3'')^m3
    for arbitrary solutions y1, y2, y3 of the order-3 operator L."""
    if L.order != 3:
        raise WrongOrder("annihilator_of_monomial needs an order-3 operator")
    m1, m2, m3 = mvec
    if m1 + m2 + m3 < 1:
        raise ValueError("monomial degree must be positive")
    dim_bound = comb(m1 + 2, 2) * comb(m2 + 2, 2) * comb(m3 + 2, 2)
    red = [-L.rat_coeff(0), -L.rat_coeff(1), -L.rat_coeff(2)]
    start = [0] * 9
    start[_jet_vars(0, 0)] = m1
    start[_jet_vars(1, 1)] = m2
    start[_jet_vars(2, 2)] = m3
    M = MultiPoly({tuple(start): RatFunc.one(L.var)}, 9)
    derivatives = [M]
    # incremental echelon basis over Q(z): rows[(pivot_monomial)] = (vec, combo)
    # combo expresses the reduced row in terms of the original derivatives
    echelon: dict = {}
    combos: dict = {}
    order = 0
    cur = M
    while order <= dim_bound:
        vec = {k: v for k, v in cur.terms.items() if not v.is_zero()}
        combo = {order: RatFunc.one(L.var)}
        pivot = None
        while vec:
            k0 = min(vec)
            if k0 not in echelon:
                pivot = k0
                break
            c = vec.pop(k0)
            evec, ecombo = echelon[k0], combos[k0]
            for k2, v2 in evec.items():
                if k2 == k0:
                    continue
                r = vec.get(k2, RatFunc.zero(L.var)) - c * v2
                if r.is_zero():
                    vec.pop(k2, None)
                else:
                    vec[k2] = r
            for k2, v2 in ecombo.items():
                nv = combo.get(k2, RatFunc.zero(L.var)) - c * v2
                if nv.is_zero():
                    combo.pop(k2, None)
                else:
                    combo[k2] = nv
        if pivot is None:
            # dependency: sum_j combo[j] * M_j = 0 with combo[order] = 1
            coeffs = [combo.get(j, RatFunc.zero(L.var)) for j in range(order + 1)]
            return DiffOp(coeffs)
        pc = vec[pivot]
        echelon[pivot] = {k: v / pc for k, v in vec.items()}
        combos[pivot] = {k: v / pc for k, v in combo.items()}
        order += 1
        cur = _diff_jet_poly(derivatives[-1], red)
        derivatives.append(cur)
    raise DependencySearchOverflow(
        f"no relation found below dimension bound {dim_bound}"
    )
