"""Local analysis at singular points.

Indicial polynomials are computed over the residue ring Q[t]/(q) for a finite
point given by an irreducible factor q of the leading coefficient (so no root
is ever extracted for the bookkeeping), and at infinity through the z -> 1/x
transform.  Exponents are resolved into scalars whenever they lie in Q or in
one quadratic extension; otherwise the indicial polynomial itself plus its
rational roots are retained.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import IrregularPoint, LogarithmicSolution, TruncationTooSmall
from .factorization import factor_uni, quadratic_field_of, rational_roots
from .rationals import QQ, as_qq, den, is_rat, num, qq
from .scalars import QuadElt, sqrt_scalar
from .series import Series
from .unipoly import UniPoly, poly_gcd

INFINITY = "oo"


# ---------------------------------------------------------------------------
# residue ring Q[t]/(q) helpers (elements are UniPoly in "t", reduced)
# ---------------------------------------------------------------------------


def _mod(p: UniPoly, q: UniPoly) -> UniPoly:
    return p % q if p.degree >= q.degree else p


def _modmul(a: UniPoly, b: UniPoly, q: UniPoly) -> UniPoly:
    return (a * b) % q


def _modpow(a: UniPoly, k: int, q: UniPoly) -> UniPoly:
    r = UniPoly.one(q.var)
    base = _mod(a, q)
    while k:
        if k & 1:
            r = _modmul(r, base, q)
        k >>= 1
        if k:
            base = _modmul(base, base, q)
    return r


def _modinv(a: UniPoly, q: UniPoly) -> UniPoly:
    """Inverse of a mod irreducible q via extended Euclid."""
    r0, r1 = q, _mod(a, q)
    s0, s1 = UniPoly.zero(q.var), UniPoly.one(q.var)
    while not r1.is_zero():
        quo, rem = r0.divmod(r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
    if r0.degree != 0:
        raise ZeroDivisionError("element not invertible (q not irreducible?)")
    inv_c = r0.coeffs[0]
    return _mod(s0 * (QQ(1) / inv_c if is_rat(inv_c) else inv_c.inverse()), q)


def power_sums(q: UniPoly, upto: int) -> list:
    """Newton power sums p_0..p_upto of the roots of monic q."""
    d = q.degree
    # e_k = (-1)^k * coeff(z^(d-k)); Newton: p_k = sum_{i<k} (-1)^(i-1) e_i p_{k-i}
    #                                         + (-1)^(k-1) k e_k   (e_k = 0 for k > d)
    e = [QQ(1)] + [(QQ(-1) ** k) * q[d - k] for k in range(1, d + 1)]
    p = [QQ(d)]
    for k in range(1, upto + 1):
        acc = QQ(0)
        for i in range(1, min(k - 1, d) + 1):
            acc = acc + (QQ(-1) ** (i - 1)) * e[i] * p[k - i]
        if k <= d:
            acc = acc + (QQ(-1) ** (k - 1)) * e[k] * k
        p.append(acc)
    return p


def trace_mod(h: UniPoly, q: UniPoly):
    """Sum of h over the roots of monic q (trace of Q[t]/(q) element)."""
    ps = power_sums(q, max(h.degree if h.coeffs else 0, 0))
    total = QQ(0)
    for j, c in enumerate(h.coeffs):
        total = total + c * ps[j]
    return total


# ---------------------------------------------------------------------------
# singular points and indicial data
# ---------------------------------------------------------------------------


@dataclass
class SingularPoint:
    """Local data of L at a finite irreducible factor q or at infinity."""

    location: object  # UniPoly (irreducible, monic) or INFINITY
    regular: bool
    indicial_scalar: list | None  # indicial coeffs as scalars (deg(q) <= 2 or oo)
    indicial_modq: list | None  # indicial coeffs as UniPoly mod q (general case)
    exponents: list = field(default_factory=list)  # resolved roots, with multiplicity
    exponents_complete: bool = True
    unresolved: UniPoly | None = None  # factor of the indicial with unrepresentable roots

    @property
    def is_infinity(self) -> bool:
        return self.location == INFINITY

    def degree(self) -> int:
        return 1 if self.is_infinity else self.location.degree

    def rational_exponents(self) -> list:
        return [e for e in self.exponents if is_rat(e)]


def _val_poly(p: UniPoly, q: UniPoly) -> tuple[int, UniPoly]:
    """q-adic valuation of p and the cofactor p/q^v."""
    if p.is_zero():
        return 10**9, p
    v = 0
    while True:
        quo, rem = p.divmod(q)
        if not rem.is_zero():
            return v, p
        p = quo
        v += 1


def _falling_factorial_poly(i: int, var: str = "L") -> UniPoly:
    """lambda*(lambda-1)*...*(lambda-i+1) as a UniPoly in lambda."""
    r = UniPoly.one(var)
    lam = UniPoly.gen(var)
    for k in range(i):
        r = r * (lam - QQ(k))
    return r


def indicial_at_factor(L, q: UniPoly) -> list[UniPoly]:
    """Indicial polynomial at a root of irreducible monic q.

    Returns the lambda-coefficients as elements of Q[t]/(q) (UniPoly in t).
    """
    n = L.order
    vals = []
    for i in range(n + 1):
        a = L.coeff(i)
        if a.is_zero():
            vals.append((None, None))
        else:
            v, _ = _val_poly(a, q)
            vals.append((v, a))
    nu = min(v - i for i, (v, a) in enumerate(vals) if v is not None)
    qt = UniPoly(list(q.coeffs), "t")
    qprime = qt.derivative()
    lam_coeffs = [UniPoly.zero("t") for _ in range(n + 1)]
    for i, (v, a) in enumerate(vals):
        if v is None or v - i != nu:
            continue
        cof = a
        for _ in range(v):
            cof = cof.exact_div(q)
        cof_t = _mod(UniPoly(list(cof.coeffs), "t"), qt)
        lc = _modmul(cof_t, _modpow(qprime, v, qt), qt)
        ff = _falling_factorial_poly(i)
        for k, fc in enumerate(ff.coeffs):
            lam_coeffs[k] = _mod(lam_coeffs[k] + lc * fc, qt)
    while len(lam_coeffs) > 1 and lam_coeffs[-1].is_zero():
        lam_coeffs.pop()
    return lam_coeffs


def _indicial_to_scalars(lam_coeffs: list[UniPoly], q: UniPoly) -> list | None:
    """Convert mod-q indicial coefficients to scalars for deg(q) <= 2."""
    if q.degree == 1:
        rho = -q[0]
        return [c.eval(rho) for c in lam_coeffs]
    if q.degree == 2:
        b, c0 = q[1], q[0]
        disc = b * b - 4 * c0
        root = sqrt_scalar(disc)
        rho = (-b + root) / 2
        out = []
        for c in lam_coeffs:
            out.append(c.eval(rho))
        return out
    return None


def _roots_in_scalars(coeffs: list, var: str = "L"):
    """Roots of a poly with scalar coefficients inside a degree-<=2 field.

    Returns (resolved_roots, unresolved_factor or None, complete_flag).
    Rational roots always extracted; a残 quadratic is solved when its
    discriminant is a square in the current field (or over Q it opens one
    new quadratic field).
    """
    p = UniPoly(list(coeffs), var)
    roots: list = []
    if all(is_rat(c) for c in p.coeffs):
        # factor over Q
        rem = p
        for f, mult in factor_uni(p):
            if f.degree == 1:
                roots.extend([-f[0]] * mult)
                for _ in range(mult):
                    rem = rem.exact_div(f)
        if rem.degree == 2:
            b, c = rem[1], rem[0]
            disc = b * b - 4 * c
            r = sqrt_scalar(disc)
            if r is not None:
                roots.append((-b + r) / 2)
                roots.append((-b - r) / 2)
                rem = UniPoly.one(var)
        if rem.degree >= 1:
            return roots, rem, False
        return roots, None, True
    # quadratic-field coefficients: peel rational roots (both coordinates must
    # vanish), then solve a remaining quadratic only inside the same field
    rem = p
    D = next(c.D for c in rem.coeffs if isinstance(c, QuadElt))
    coord0 = UniPoly([_coord(c, 0) for c in rem.coeffs], var)
    coord1 = UniPoly([_coord(c, 1) for c in rem.coeffs], var)
    g = poly_gcd(coord0, coord1) if not coord1.is_zero() else coord0
    if g.degree >= 1:
        for r0 in rational_roots(g):
            while True:
                quo, remd = rem.divmod(UniPoly([-r0, QQ(1)], var))
                if remd.is_zero():
                    roots.append(r0)
                    rem = quo
                else:
                    break
    if rem.degree == 1:
        roots.append(_sdiv(-rem[0], rem.lc()))
        rem = UniPoly.one(var)
    elif rem.degree == 2:
        a2 = rem.lc()
        b = _sdiv(rem[1], a2)
        c = _sdiv(rem[0], a2)
        disc = b * b - 4 * c
        r = sqrt_scalar(disc, D_hint=D) if is_rat(disc) else sqrt_scalar(disc)
        if r is not None:
            roots.append(_sdiv(-b + r, QQ(2)))
            roots.append(_sdiv(-b - r, QQ(2)))
            rem = UniPoly.one(var)
    if rem.degree >= 1:
        return roots, rem, False
    return roots, None, True


def _coord(c, i):
    if is_rat(c):
        return c if i == 0 else QQ(0)
    return c.a if i == 0 else c.b


def _sdiv(a, b):
    from .scalars import s_div

    return s_div(a, b)


def singular_points(L, factor_hints: list[UniPoly] | None = None) -> list[SingularPoint]:
    """All singular points: one per irreducible factor of a_n, plus infinity."""
    pts = []
    lead = L.leading()
    if factor_hints is not None:
        factors = [(f, 1) for f in factor_hints]
    else:
        factors = factor_uni(lead) if lead.degree >= 1 else []
    for q, _m in factors:
        if q.degree < 1:
            continue
        pts.append(_point_at_factor(L, q.monic()))
    pts.append(_point_at_infinity(L))
    return pts


def _point_at_factor(L, q: UniPoly) -> SingularPoint:
    n = L.order
    lam = indicial_at_factor(L, q)
    regular = len(lam) - 1 == n
    sc = _indicial_to_scalars(lam, q)
    if sc is not None:
        roots, unresolved, complete = _roots_in_scalars(sc)
    else:
        roots, unresolved, complete = _rational_roots_modq(lam, q)
    return SingularPoint(
        location=q,
        regular=regular,
        indicial_scalar=sc,
        indicial_modq=lam,
        exponents=roots,
        exponents_complete=complete,
        unresolved=unresolved,
    )


def _rational_roots_modq(lam: list[UniPoly], q: UniPoly):
    """Rational roots of an indicial with coefficients in Q[t]/(q), deg q > 2."""
    deg_t = max((c.degree if not c.is_zero() else 0) for c in lam)
    deg_t = int(max(deg_t, 0))
    g = None
    for j in range(deg_t + 1):
        pj = UniPoly([c[j] for c in lam], "L")
        if pj.is_zero():
            continue
        g = pj if g is None else poly_gcd(g, pj)
    if g is None or g.degree < 1:
        return [], UniPoly(list(lam[0].coeffs), "L") if g is None else g, False
    roots = []
    for f, mult in factor_uni(g):
        if f.degree == 1:
            roots.extend([-f[0]] * mult)
    complete = len(roots) == len(lam) - 1
    return roots, (None if complete else g), complete


def _point_at_infinity(L) -> SingularPoint:
    R = L.transform_reciprocal()
    x = UniPoly.gen(R.var)
    lam = indicial_at_factor(R, x)
    regular = len(lam) - 1 == L.order
    sc = [c.eval(QQ(0)) for c in lam]
    roots, unresolved, complete = _roots_in_scalars(sc)
    return SingularPoint(
        location=INFINITY,
        regular=regular,
        indicial_scalar=sc,
        indicial_modq=None,
        exponents=roots,
        exponents_complete=complete,
        unresolved=unresolved,
    )


def is_fuchsian(L) -> bool:
    return all(p.regular for p in singular_points(L))


def local_exponents(L, point: SingularPoint) -> list:
    """Exponents at a regular point; raises IrregularPoint otherwise."""
    if not point.regular:
        raise IrregularPoint(f"irregular singular point at {point.location}")
    return list(point.exponents)


def ordinary_expansion_point(L):
    """Smallest non-negative integer that is ordinary for L."""
    lead = L.leading()
    k = 0
    while True:
        z0 = QQ(k)
        if lead.eval(z0) != 0:
            return z0
        k += 1


# ---------------------------------------------------------------------------
# series solution bases
# ---------------------------------------------------------------------------


@dataclass
class PuiseuxBasis:
    z0: object
    series: list  # list of Series
    trunc: int
    normalization: str  # "delta" (Wronskian = identity at z0) or "frobenius"
    exponents: list | None = None  # leading exponents for frobenius bases

    def __iter__(self):
        return iter(self.series)


def series_basis(L, z0, T: int) -> PuiseuxBasis:
    """Basis of solution series at an ordinary rational point z0.

    Normalized so y_i = x**i/i! + O(x**n): the Wronskian at z0 is the
    identity matrix.
    """
    n = L.order
    if T < n + 1:
        raise TruncationTooSmall(f"T={T} too small for order {n}")
    shifted = [L.coeff(i).shift(z0) for i in range(n + 1)]
    if shifted[n].eval(QQ(0)) == 0:
        raise ValueError(f"z0={z0} is not an ordinary point")
    b = [list(p.coeffs) for p in shifted]
    sols = []
    fact = 1
    for i in range(n):
        c = [QQ(0)] * T
        c[i] = qq(1, fact)
        _run_recurrence(b, n, c, T)
        sols.append(Series(c, 0, T))
        fact *= i + 1
    return PuiseuxBasis(z0=z0, series=sols, trunc=T, normalization="delta")


def _run_recurrence(b, n, c, T):
    """Fill c[n..T-1] from initial c[0..n-1] using sum_i a_i y^(i) = 0."""
    bn0 = b[n][0]
    for N in range(0, T - n):
        acc = QQ(0)
        for i in range(n + 1):
            bi = b[i]
            kmax = min(len(bi) - 1, N + i)
            for k in range(0, kmax + 1):
                if i == n and k == 0:
                    continue
                j = N - k + i
                if j < 0 or j >= T:
                    continue
                cj = c[j]
                if cj == 0:
                    continue
                coeff = bi[k]
                if coeff == 0:
                    continue
                acc = acc + coeff * _ff(j, i) * cj
        c[N + n] = -acc / (bn0 * _ff(N + n, n))


def _ff(j: int, i: int):
    r = 1
    for k in range(i):
        r *= j - k
    return QQ(r)


def frobenius_basis(L, z0, T: int) -> PuiseuxBasis:
    """Puiseux basis at a regular singular rational point (no log terms).

    Raises LogarithmicSolution when the Frobenius construction hits an
    unresolvable resonance or a repeated exponent.
    """
    n = L.order
    q = UniPoly([-as_qq(z0), QQ(1)], L.var)
    pt = _point_at_factor(L, q)
    if not pt.regular:
        raise IrregularPoint(f"irregular point {z0}")
    if not pt.exponents_complete or not all(is_rat(e) for e in pt.exponents):
        raise LogarithmicSolution(
            f"exponents at {z0} not all rational: Puiseux basis not representable"
        )
    exps = sorted(pt.exponents)
    if len(set(exps)) != len(exps):
        raise LogarithmicSolution(f"repeated exponent at {z0}")
    shifted = [L.coeff(i).shift(z0) for i in range(n + 1)]
    ram = 1
    for e in exps:
        ram = ram * den(e) // __import__("math").gcd(ram, den(e))
    # Phi_m(s) = sum_i b_{i,m+i} ff(s, i); nu = min(k - i)
    bl = [list(p.coeffs) for p in shifted]
    nu = min(
        (_val_list(bl[i]) - i) for i in range(n + 1) if any(c != 0 for c in bl[i])
    )
    maxm = max(len(bl[i]) - 1 - i for i in range(n + 1) if bl[i]) if bl else 0
    sols = []
    steps = T
    for e in exps:
        cs = [QQ(0)] * steps
        cs[0] = QQ(1)
        for N in range(1, steps):
            ind = _phi(bl, nu, 0, e + N, n)
            rhs = QQ(0)
            for m in range(1, min(N, maxm - nu) + 1):
                cn = cs[N - m]
                if cn != 0:
                    rhs = rhs + _phi(bl, nu, m, e + N - m, n) * cn
            if ind == 0:
                if rhs != 0:
                    raise LogarithmicSolution(
                        f"resonance at exponent {e}+{N} forces a log term"
                    )
                cs[N] = QQ(0)
            else:
                cs[N] = -rhs / ind
        npts = num(e * ram)
        sols.append(
            Series(
                _spread(cs, ram),
                npts,
                npts + steps * ram,
                ram,
            )
        )
    prec = min(s.prec for s in sols)
    sols = [s.truncate(prec) for s in sols]
    return PuiseuxBasis(z0=z0, series=sols, trunc=prec, normalization="frobenius", exponents=exps)


def _val_list(cs) -> int:
    for i, c in enumerate(cs):
        if c != 0:
            return i
    return 10**9


def _phi(bl, nu, m, s, n):
    acc = QQ(0)
    for i in range(n + 1):
        k = nu + m + i
        if 0 <= k < len(bl[i]):
            c = bl[i][k]
            if c != 0:
                acc = acc + c * _ffq(s, i)
    return acc


def _ffq(s, i: int):
    r = QQ(1)
    for k in range(i):
        r = r * (s - k)
    return r


def _spread(cs, ram):
    if ram == 1:
        return list(cs)
    out = []
    for c in cs:
        out.append(c)
        out.extend([QQ(0)] * (ram - 1))
    del out[len(out) - (ram - 1) :]
    return out


def fuchs_relation_defect(L):
    """Sum of all exponents minus (s-2)*n(n-1)/2 (zero for Fuchsian operators).

    Exponent sums are taken from indicial coefficients (trace over conjugate
    roots), so irrational exponents need no root extraction.
    """
    n = L.order
    total = QQ(0)
    npts = 0
    for pt in singular_points(L):
        if not pt.regular:
            raise IrregularPoint("Fuchs relation needs a Fuchsian operator")
        if pt.is_infinity:
            total = total + _neg_ratio(pt.indicial_scalar)
            npts += 1
        elif pt.indicial_scalar is not None:
            d = pt.location.degree
            total = total + _neg_ratio(pt.indicial_scalar) * d
            npts += d
        else:
            lam = pt.indicial_modq
            qt = UniPoly(list(pt.location.coeffs), "t")
            u = _modmul(lam[-2] * QQ(-1), _modinv(lam[-1], qt), qt)
            total = total + trace_mod(u, qt)
            npts += pt.location.degree
    expected = qq(n * (n - 1), 2) * (npts - 2)
    return total - expected


def _neg_ratio(sc):
    from .scalars import s_div

    return -s_div(sc[-2], sc[-1]) if len(sc) >= 2 else QQ(0)
