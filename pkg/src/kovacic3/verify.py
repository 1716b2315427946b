"""Independent numeric verification of solution objects (mpmath).

Riccati outputs: a root of R(T) at a random ordinary point is continued as a
Taylor series and pushed through the third-order Riccati equation of L.

Pullback outputs: f is solved numerically from Qmin, all data are expanded
as complex Taylor series, and two residuals are formed: the gauge-connection
identity (h'/h) C + C' + s' C A0(s) - A C = 0, and the reconstructed
solutions y_j = h * (C Y0(s))_1j pushed through L, with Y0 an exact-series
fundamental basis of the tagged hypergeometric operator.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import mpmath as mp

from .errors import VerificationFailed
from .rationals import QQ, num, den


def _mpq(c):
    if hasattr(c, "numerator"):
        return mp.mpf(num(c)) / mp.mpf(den(c))
    return mp.mpf(c)


def _scalar_c(c) -> complex:
    from .scalars import QuadElt

    if isinstance(c, QuadElt):
        a = _mpq(c.a)
        b = _mpq(c.b)
        if c.D >= 0:
            return mp.mpc(a + b * mp.sqrt(c.D))
        return mp.mpc(a, b * mp.sqrt(-c.D))
    return mp.mpc(_mpq(c))


# -- tiny mpc Taylor-series kernel -------------------------------------------


def s_add(a, b):
    n = max(len(a), len(b))
    return [
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    ]


def s_mul(a, b, T):
    out = [mp.mpc(0)] * T
    for i, x in enumerate(a[:T]):
        if x:
            for j, y in enumerate(b[: T - i]):
                if y:
                    out[i + j] += x * y
    return out


def s_scale(a, c):
    return [x * c for x in a]


def s_inv(a, T):
    if a[0] == 0:
        raise VerificationFailed("series inversion at zero")
    out = [1 / a[0]] + [mp.mpc(0)] * (T - 1)
    for k in range(1, T):
        acc = mp.mpc(0)
        for j in range(1, k + 1):
            if j < len(a) and a[j]:
                acc += a[j] * out[k - j]
        out[k] = -acc / a[0]
    return out

def s_div(a, b, T):
    return s_mul(a, s_inv(b, T), T)


def s_diff(a):
    return [a[i] * i for i in range(1, len(a))] + [mp.mpc(0)]


def s_pow_frac(a, p, q, T):
    """a**(p/q), principal branch."""
    a0 = a[0]
    if a0 == 0:
        raise VerificationFailed("fractional power at a zero")
    u = [x / a0 for x in a]
    # w = u^(p/q): w' u q = (p/q)... solve w_k recurrence with alpha = p/q
    alpha = mp.mpf(p) / q
    w = [mp.mpc(1)] + [mp.mpc(0)] * (T - 1)
    for k in range(1, T):
        acc = mp.mpc(0)
        for j in range(1, k + 1):
            uj = u[j] if j < len(u) else 0
            if uj:
                acc += (alpha * j - (k - j)) * uj * w[k - j]
        w[k] = acc / k
    c = mp.power(a0, alpha)
    return [c * x for x in w]


def s_compose(outer, inner, T):
    """outer(inner(x)) with inner[0] == 0."""
    if inner[0] != 0:
        raise VerificationFailed("composition needs valuation >= 1")
    out = [mp.mpc(0)] * T
    for c in reversed(outer[:T]):
        out = s_mul(out, inner, T)
        out[0] += c
    return out


def _poly_series(p, z0, T):
    """UniPoly -> series at z0."""
    cs = [mp.mpc(0)] * T
    shifted = p.shift(z0) if hasattr(z0, "denominator") else None
    if shifted is not None:
        for i, c in enumerate(shifted.coeffs[:T]):
            cs[i] = _scalar_c(c)
        return cs
    # numeric center: Taylor by synthetic division
    coeffs = [_scalar_c(c) for c in p.coeffs]
    for k in range(T):
        if not coeffs:
            break
        acc = mp.mpc(0)
        for i in range(len(coeffs) - 1, -1, -1):
            acc = coeffs[i] + acc * z0
            coeffs[i] = acc
        cs[k] = coeffs.pop(0)
    return cs


def _ratfunc_series(r, z0, T):
    n = _poly_series(r.num, z0, T)
    d = _poly_series(r.den, z0, T)
    return s_div(n, d, T)


def _algelem_series(e, fser, z0, T):
    out = [mp.mpc(0)] * T
    fp = [mp.mpc(1)] + [mp.mpc(0)] * (T - 1)
    for k, c in enumerate(e.coeffs):
        if k:
            fp = s_mul(fp, fser, T)
        if not c.is_zero():
            out = s_add(out, s_mul(_ratfunc_series(c, z0, T), fp, T))
    return out


def _fundamental_series(op, z0, T):
    """Delta-normalized basis of op at numeric ordinary z0 (order n)."""
    n = op.order
    b = [_poly_series(op.coeff(i), z0, T + n) for i in range(n + 1)]
    if b[n][0] == 0:
        raise VerificationFailed("evaluation point is singular for the model")
    sols = []
    import math

    for init in range(n):
        c = [mp.mpc(0)] * (T + n)
        c[init] = mp.mpf(1) / math.factorial(init)
        for N in range(T + n - n):
            acc = mp.mpc(0)
            for i in range(n + 1):
                bi = b[i]
                for k in range(0, min(len(bi) - 1, N + i) + 1):
                    if i == n and k == 0:
                        continue
                    j = N - k + i
                    if j < 0 or j >= len(c) or c[j] == 0 or bi[k] == 0:
                        continue
                    acc += bi[k] * _ff(j, i) * c[j]
            c[N + n] = -acc / (b[n][0] * _ff(N + n, n))
        sols.append(c[: T + n])
    return sols


def _ff(j, i):
    r = 1
    for k in range(i):
        r *= j - k
    return r


def _apply_op_series(op, y, z0, T):
    n = op.order
    out = [mp.mpc(0)] * T
    d = list(y)
    for i in range(n + 1):
        a = op.coeff(i)
        if not a.is_zero():
            out = s_add(out, s_mul(_poly_series(a, z0, T), d, T))
        if i < n:
            d = s_diff(d)
    return out[: T - n - 1]


@dataclass
class VerificationReport:
    kind: str
    point: object
    residual: float
    tolerance: float
    passed: bool
    details: dict = field(default_factory=dict)


def verify_riccati(L, ricc, zstar=None, dps: int = 50, tol: float = 1e-30, T: int = 24) -> VerificationReport:
    """Each numeric root branch of R, continued as a series, satisfies the
    third-order Riccati equation of L."""
    with mp.workdps(dps):
        z0 = _pick_ordinary(L, zstar)
        cfs = [_ratfunc_series(c, z0, T) for c in ricc.coeffs]
        roots = mp.polyroots([cfs[k][0] for k in range(len(cfs) - 1, -1, -1)], maxsteps=200, extraprec=80)
        worst = 0.0
        for w0 in roots:
            w = _lift_root(cfs, w0, T)
            # w'' + 3 w w' + w^3 + p2 (w' + w^2) + p1 w + p0
            p2 = _ratfunc_series(L.rat_coeff(2), z0, T)
            p1 = _ratfunc_series(L.rat_coeff(1), z0, T)
            p0 = _ratfunc_series(L.rat_coeff(0), z0, T)
            w1 = s_diff(w)
            w2 = s_diff(w1)
            res = s_add(w2, s_add(s_scale(s_mul(w, w1, T), 3), s_mul(w, s_mul(w, w, T), T)))
            res = s_add(res, s_mul(p2, s_add(w1, s_mul(w, w, T)), T))
            res = s_add(res, s_add(s_mul(p1, w, T), p0))
            m = max(abs(x) for x in res[: T - 4])
            worst = max(worst, float(m))
        return VerificationReport(
            kind="riccati", point=z0, residual=worst, tolerance=tol, passed=worst < tol
        )


def _lift_root(cfs, w0, T):
    """Series root of sum cfs[k] w^k with w(0) = w0, by series Newton."""
    w = [mp.mpc(w0)] + [mp.mpc(0)] * (T - 1)
    for _ in range(T.bit_length() + 2):
        F = [mp.mpc(0)] * T
        Fp = [mp.mpc(0)] * T
        wp = [mp.mpc(1)] + [mp.mpc(0)] * (T - 1)
        for k, ck in enumerate(cfs):
            if k:
                wp = s_mul(wp, w, T)
            F = s_add(F, s_mul(ck, wp, T))
        # derivative in w
        wp = [mp.mpc(1)] + [mp.mpc(0)] * (T - 1)
        for k in range(1, len(cfs)):
            if k > 1:
                wp = s_mul(wp, w, T)
            Fp = s_add(Fp, s_scale(s_mul(cfs[k], wp, T), k))
        w = s_add(w, s_scale(s_div(F, Fp, T), -1))
    return w


def _pick_ordinary(L, zstar):
    if zstar is not None:
        return mp.mpf(zstar)
    lead = L.leading()
    z0 = mp.mpf("0.31813")
    for _ in range(40):
        v = sum(_scalar_c(c) * z0**i for i, c in enumerate(lead.coeffs))
        if abs(v) > mp.mpf("1e-6"):
            return z0
        z0 += mp.mpf("0.1173")
    raise VerificationFailed("no ordinary evaluation point found")


def gauge_residual_numeric(L, sol, zstar=None, dps: int = 50, T: int = 18) -> float:
    """Numeric residual of the gauge-connection identity alone (cheap screen
    used to select among candidate minimal polynomials)."""
    with mp.workdps(dps):
        z0 = _pick_ordinary(L, zstar)
        for _attempt in range(6):
            try:
                qcfs = [_poly_series(q, z0, T) for q in sol.qmin]
                fser = _solve_f_series(qcfs, T)
                sser = _algelem_series(sol.s, fser, z0, T)
                s0 = sser[0]
                if min(abs(s0), abs(s0 - 1)) < mp.mpf("1e-8"):
                    raise VerificationFailed("bad point")
                C = [[_algelem_series(sol.C[i][j], fser, z0, T) for j in range(3)] for i in range(3)]
                w = _algelem_series(sol.h_base, fser, z0, T)
                hlog = s_scale(s_div(s_diff(w), w, T), mp.mpf(1) / sol.h_index)
                E = sol.equation.operator()
                A = L.companion()
                A_n = [[_ratfunc_series(A[i][j], z0, T) for j in range(3)] for i in range(3)]
                A0 = E.companion()
                A0_n = [[_compose_rat(A0[i][j], sser, s0, T) for j in range(3)] for i in range(3)]
                sp = s_diff(sser)
                resid = 0.0
                scaleC = max(abs(C[i][j][0]) for i in range(3) for j in range(3)) or mp.mpf(1)
                for i in range(3):
                    for j in range(3):
                        t = s_diff(C[i][j])
                        t = s_add(t, s_mul(hlog, C[i][j], T))
                        acc = [mp.mpc(0)] * T
                        for k in range(3):
                            acc = s_add(acc, s_mul(C[i][k], A0_n[k][j], T))
                        t = s_add(t, s_mul(sp, acc, T))
                        for k in range(3):
                            t = s_add(t, s_scale(s_mul(A_n[i][k], C[k][j], T), -1))
                        m = max(abs(x) for x in t[: T - 4]) / scaleC
                        resid = max(resid, float(m))
                return resid
            except (VerificationFailed, ZeroDivisionError):
                z0 += mp.mpf("0.0831")
        raise VerificationFailed("no usable screening point")


def _solve_f_series(qcfs, T):
    if len(qcfs) == 2 and all(abs(c) < mp.mpf("1e-30") for c in qcfs[0]):
        return [mp.mpc(0)] * T  # Qmin = f
    roots = mp.polyroots(
        [qcfs[k][0] for k in range(len(qcfs) - 1, -1, -1)], maxsteps=300, extraprec=120
    )
    for r0 in roots:
        try:
            return _lift_root(qcfs, r0, T)
        except (ZeroDivisionError, VerificationFailed):
            continue
    raise VerificationFailed("no liftable root of Qmin")


def verify_pullback(L, sol, zstar=None, dps: int = 60, tol: float = 1e-20, T: int = 26) -> VerificationReport:
    """Check Y = h * C * Y0(s(z)) columns against L at a random point.

    Residuals: (a) the gauge-connection identity, (b) L applied to the three
    reconstructed solutions built from an exact-series fundamental basis of
    the tagged hypergeometric operator.
    """
    with mp.workdps(dps):
        z0 = _pick_ordinary(L, zstar)
        # f-series from Qmin
        qcfs = [_poly_series(q, z0, T) for q in sol.qmin]
        fser = _solve_f_series(qcfs, T)
        sser = _algelem_series(sol.s, fser, z0, T)
        s0 = sser[0]
        for bad in (0, 1):
            if abs(s0 - bad) < mp.mpf("1e-8"):
                raise VerificationFailed(f"s(z*) too close to {bad}; move the point")
        C = [[_algelem_series(sol.C[i][j], fser, z0, T) for j in range(3)] for i in range(3)]
        w = _algelem_series(sol.h_base, fser, z0, T)
        hlog = s_scale(s_div(s_diff(w), w, T), mp.mpf(1) / sol.h_index)  # h'/h
        E = sol.equation.operator()
        # gauge identity: (h'/h) C + C' + s' C A0(s) - A C = 0
        A = L.companion()
        A_n = [[_ratfunc_series(A[i][j], z0, T) for j in range(3)] for i in range(3)]
        A0 = E.companion()
        A0_n = [[_compose_rat(A0[i][j], sser, s0, T) for j in range(3)] for i in range(3)]
        sp = s_diff(sser)
        resid = 0.0
        scaleC = max(abs(C[i][j][0]) for i in range(3) for j in range(3)) or mp.mpf(1)
        for i in range(3):
            for j in range(3):
                t = s_diff(C[i][j])
                t = s_add(t, s_mul(hlog, C[i][j], T))
                acc = [mp.mpc(0)] * T
                for k in range(3):
                    acc = s_add(acc, s_mul(C[i][k], A0_n[k][j], T))
                t = s_add(t, s_mul(sp, acc, T))
                for k in range(3):
                    t = s_add(t, s_scale(s_mul(A_n[i][k], C[k][j], T), -1))
                m = max(abs(x) for x in t[: T - 4]) / scaleC
                resid = max(resid, float(m))
        # reconstructed solutions through the model basis
        Y0 = _fundamental_series(E, s0, T + 2)
        vser = list(sser)
        vser[0] = mp.mpc(0)
        h = s_pow_frac(w, 1, sol.h_index, T)
        resid2 = 0.0
        for j in range(3):
            uj = Y0[j]
            rows = [uj, s_diff(uj), s_diff(s_diff(uj))]
            y = [mp.mpc(0)] * T
            for k in range(3):
                y = s_add(y, s_mul(C[0][k], s_compose(rows[k], vser, T), T))
            y = s_mul(h, y, T)
            res = _apply_op_series(L, y, z0, T)
            scale = max(abs(c) for c in y) or mp.mpf(1)
            m = max(abs(x) for x in res) / scale
            resid2 = max(resid2, float(m))
        worst = max(resid, resid2)
        return VerificationReport(
            kind="pullback", point=z0, residual=worst, tolerance=tol,
            passed=worst < tol,
            details={"gauge_identity": resid, "solution_residual": resid2,
                     "s(z*)": complex(s0)},
        )


def _compose_rat(r, sser, s0, T):
    """Rational function of z evaluated along z = s(x) (numeric series)."""
    n = _poly_series(r.num, s0, T)
    d = _poly_series(r.den, s0, T)
    v = list(sser)
    v[0] = mp.mpc(0)
    return s_div(s_compose(n, v, T), s_compose(d, v, T), T)


def verify_tampered_riccati(L, ricc, perturb=1e-3, **kw) -> bool:
    """Negative control: a perturbed Riccati must fail verification."""
    from .ratfunc import RatFunc
    from .riccati import RiccatiPolynomial
    from .rationals import qq

    bad = [c + qq(1, 1000) if k == 0 else c for k, c in enumerate(ricc.coeffs)]
    bad_r = RiccatiPolynomial.__new__(RiccatiPolynomial)
    bad_r.coeffs = bad
    rep = verify_riccati(L, bad_r, **kw)
    return not rep.passed
