"""Symmetric powers of 3x3 matrices and of the companion system.

Degree-m monomials in three variables are ordered colexicographically on the
exponent triples ([m,0,0], [m-1,1,0], ..., [0,m,0], [m-1,0,1], ..., [0,0,m]),
which puts the X3-free triples first; only those first m+1 coordinates are
needed by the Riccati and gauge-value constructions.

``sym_power_matrix`` works over any commutative coefficient ring (scalars,
RatFunc, series); ``sym_system`` returns the first-order system satisfied by
Sym^m of a fundamental matrix; ``sym_vector_series`` integrates that system
as truncated power series from the identity-Wronskian initial data, which is
how hyperexponential-value vectors are produced without ever materializing a
big scalar operator.
"""

from __future__ import annotations

from math import comb, factorial

from .rationals import QQ, qq
from .ratfunc import RatFunc
from .series import Series, ratfunc_series_at


def triples(m: int, arity: int = 3) -> list[tuple]:
    """Exponent tuples of total degree m, colex order (last coordinate slowest)."""
    if arity == 2:
        return [(m - b, b) for b in range(m + 1)]
    out = []
    for c in range(m + 1):
        for b in range(m - c + 1):
            out.append((m - b - c, b, c))
    return out


def sym_dim(m: int, arity: int = 3) -> int:
    return comb(m + arity - 1, arity - 1)


def multinom(m: int, t: tuple) -> int:
    r = factorial(m)
    for k in t:
        r //= factorial(k)
    return r


def triple_index(m: int) -> dict:
    return {t: i for i, t in enumerate(triples(m))}


def sym_power_matrix(M, m: int, arity: int = 3):
    """Sym^m of an arity x arity matrix over a commutative ring.

    Entry (i,j) is the coefficient of X^t_i / multinom(t_i) in
    prod_k c_k^(t_j)_k / multinom(t_j), with c_k = sum_l X_l * M[l][k].
    Sym^1(M) = M and Sym^m(AB) = Sym^m(A) Sym^m(B).
    """
    from .multipoly import MultiPoly

    ts = triples(m, arity)
    n = len(ts)
    cols = []
    for k in range(arity):
        cols.append(
            MultiPoly(
                {tuple(int(i == l) for i in range(arity)): M[l][k] for l in range(arity)},
                arity,
            )
        )
    out = [[None] * n for _ in range(n)]
    for j, tj in enumerate(ts):
        prod = MultiPoly.const(QQ(1), arity)
        for k, e in enumerate(tj):
            if e:
                prod = prod * cols[k] ** e
        scale_j = qq(1, multinom(m, tj))
        for i, ti in enumerate(ts):
            c = prod.coeff(ti)
            out[i][j] = c * (multinom(m, ti) * scale_j)
    return out


def sym_system(A, m: int):
    """Matrix S with Sym^m(Y)' = S * Sym^m(Y) for any fundamental Y' = AY.

    A is 3x3 over RatFunc.  Row/column indices follow triples(m); the paper's
    multinomial normalization of Sym^m coordinates is used.
    """
    ts = triples(m)
    idx = triple_index(m)
    n = len(ts)
    var = A[0][0].var if isinstance(A[0][0], RatFunc) else "z"
    zero = RatFunc.zero(var)
    S = [[zero for _ in range(n)] for _ in range(n)]
    units = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    for i, e in enumerate(ts):
        be = multinom(m, e)
        for l in range(3):
            for k in range(3):
                a = A[l][k]
                if a.is_zero():
                    continue
                f = tuple(e[t] + units[k][t] - units[l][t] for t in range(3))
                if any(x < 0 for x in f):
                    continue
                j = idx[f]
                coeff = e[k] + 1 - (1 if l == k else 0)
                if coeff == 0:
                    continue
                S[i][j] = S[i][j] + a * qq(be * coeff, multinom(m, f))
    return S


def sym_vector_series(L, m: int, c_init: list, z0, T: int) -> list[Series]:
    """Series of F = Sym^m(Y) C_o at an ordinary point z0.

    Y is the Wronskian of the delta-normalized basis of L at z0 (so the
    initial vector is exactly C_o).  The N entries are integrated from the
    first-order recurrence of the symmetric-power system; entry order follows
    triples(m).  Cost O(N * T^2) coefficient operations.
    """
    ts = triples(m)
    idx = triple_index(m)
    n = len(ts)
    assert len(c_init) == n
    alpha = ratfunc_series_at(L.rat_coeff(2), z0, T).taylor_coeffs()
    beta = ratfunc_series_at(L.rat_coeff(1), z0, T).taylor_coeffs()
    gamma = ratfunc_series_at(L.rat_coeff(0), z0, T).taylor_coeffs()
    # raw coefficients W_e = [X^e] P(c1,c2,c3); F_e = multinom(e) * W_e
    W = [[QQ(0)] * T for _ in range(n)]
    for i, e in enumerate(ts):
        W[i][0] = c_init[i] * qq(1, multinom(m, e))
    up = [None] * n  # index of e + u2 - u1  (coefficient b+1)
    rt = [None] * n  # index of e + u3 - u2  (coefficient c+1)
    g1 = [None] * n  # index of e + u1 - u3  (gamma term, coefficient a+1)
    g2 = [None] * n  # index of e + u2 - u3  (beta term, coefficient b+1)
    for i, (a, b, c) in enumerate(ts):
        if a > 0:
            up[i] = idx[(a - 1, b + 1, c)]
        if b > 0:
            rt[i] = idx[(a, b - 1, c + 1)]
        if c > 0:
            g1[i] = idx[(a + 1, b, c - 1)]
            g2[i] = idx[(a, b + 1, c - 1)]
    for nn in range(T - 1):
        for i, (a, b, c) in enumerate(ts):
            acc = QQ(0)
            if up[i] is not None:
                acc = acc + (b + 1) * W[up[i]][nn]
            if rt[i] is not None:
                acc = acc + (c + 1) * W[rt[i]][nn]
            if g1[i] is not None:
                w = W[g1[i]]
                s = QQ(0)
                for j in range(nn + 1):
                    gj = gamma[j]
                    if gj:
                        s = s + gj * w[nn - j]
                acc = acc - (a + 1) * s
            if g2[i] is not None:
                w = W[g2[i]]
                s = QQ(0)
                for j in range(nn + 1):
                    bj = beta[j]
                    if bj:
                        s = s + bj * w[nn - j]
                acc = acc - (b + 1) * s
            if c > 0:
                w = W[i]
                s = QQ(0)
                for j in range(nn + 1):
                    aj = alpha[j]
                    if aj:
                        s = s + aj * w[nn - j]
                acc = acc - c * s
            W[i][nn + 1] = acc / (nn + 1)
    out = []
    for i, e in enumerate(ts):
        out.append(Series([multinom(m, e) * w for w in W[i]], 0, T))
    return out


def monomial_series(basis, m: int) -> list[Series]:
    """First-row entries of Sym^m(Y): products prod y_k^(t_k) / multinom(t).

    Works for any basis (including ramified Frobenius bases); order follows
    triples(m).
    """
    ys = list(basis.series)
    pw = []
    for y in ys:
        row = [None] * (m + 1)
        row[0] = Series.const(QQ(1), y.prec, y.ram)
        row[1] = y
        for e in range(2, m + 1):
            row[e] = row[e - 1] * y
        pw.append(row)
    out = []
    for t in triples(m):
        s = None
        for k, e in enumerate(t):
            if e:
                s = pw[k][e] if s is None else s * pw[k][e]
        if s is None:
            s = Series.const(QQ(1), ys[0].prec, ys[0].ram)
        out.append(s * qq(1, multinom(m, t)))
    return out
