"""Exact rational arithmetic backend and small integer number theory.

Rationals are gmpy2.mpq when gmpy2 is available (much faster on the large
numerators that show up in series matching), with a transparent fallback to
fractions.Fraction.  All code above this module goes through ``QQ`` and the
helpers here so the backend stays swappable.
"""

from __future__ import annotations

import math

try:
    from gmpy2 import mpq as QQ, mpz

    _HAVE_GMPY2 = True

    def _to_int(n):
        return int(n)

except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as QQ

    mpz = int
    _HAVE_GMPY2 = False

    def _to_int(n):
        return int(n)


ZERO = QQ(0)
ONE = QQ(1)

#: types accepted wherever a plain rational is expected
RAT_TYPES = (type(ZERO), int)


def qq(a, b=1):
    """Build an exact rational a/b."""
    return QQ(a, b)


def is_rat(x) -> bool:
    return isinstance(x, RAT_TYPES)


def as_qq(x):
    if isinstance(x, type(ZERO)):
        return x
    return QQ(x)


def num(q) -> int:
    return _to_int(q.numerator) if not isinstance(q, int) else q


def den(q) -> int:
    return _to_int(q.denominator) if not isinstance(q, int) else 1


def is_integer(q) -> bool:
    return den(q) == 1


def qfloor(q) -> int:
    n, d = num(q), den(q)
    return n // d


def qceil(q) -> int:
    n, d = num(q), den(q)
    return -((-n) // d)


def qfrac(q):
    """Fractional part in [0, 1)."""
    return as_qq(q) - qfloor(q)


def ilcm(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return abs(a // math.gcd(a, b) * b)


# ---------------------------------------------------------------------------
# integer factorization (trial division + Miller-Rabin + Pollard rho),
# enough for squarefree decomposition of discriminants
# ---------------------------------------------------------------------------

_SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


def is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic witness set for n < 3.3e24
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    import random

    while True:
        c = random.randrange(1, n)
        f = lambda x: (x * x + c) % n
        x = y = random.randrange(2, n)
        d = 1
        while d == 1:
            x = f(x)
            y = f(f(y))
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


def factorint(n: int) -> dict:
    """Prime factorization of |n| as {prime: exponent}; sign discarded."""
    n = abs(n)
    out: dict = {}
    if n <= 1:
        return out
    for p in _SMALL_PRIMES:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack.extend([r, r])
            continue
        d = _pollard_rho(m)
        stack.extend([d, m // d])
    return out


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write n = s * f**2 with s squarefree (sign carried by s); return (s, f)."""
    if n == 0:
        return 0, 1
    sign = -1 if n < 0 else 1
    s, f = 1, 1
    for p, e in factorint(n).items():
        if e % 2:
            s *= p
        f *= p ** (e // 2)
    return sign * s, f


def int_sqrt_exact(n: int):
    """Exact integer square root of n, or None."""
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def rat_sqrt_exact(q):
    """Exact rational square root of q >= 0, or None."""
    q = as_qq(q)
    if q < 0:
        return None
    rn = int_sqrt_exact(num(q))
    if rn is None:
        return None
    rd = int_sqrt_exact(den(q))
    if rd is None:
        return None
    return QQ(rn, rd)


def int_nth_root_exact(n: int, k: int):
    """Exact k-th root of integer n, or None (handles negative n for odd k)."""
    if k == 1:
        return n
    if n < 0:
        if k % 2 == 0:
            return None
        r = int_nth_root_exact(-n, k)
        return None if r is None else -r
    if n in (0, 1):
        return n
    r = round(n ** (1.0 / k))
    for c in (r - 1, r, r + 1):
        if c >= 0 and c**k == n:
            return c
    return None


def rat_nth_root_exact(q, k: int):
    """Exact rational k-th root of q, or None."""
    q = as_qq(q)
    rn = int_nth_root_exact(num(q), k)
    if rn is None:
        return None
    rd = int_nth_root_exact(den(q), k)
    if rd is None:
        return None
    return QQ(rn, rd)
