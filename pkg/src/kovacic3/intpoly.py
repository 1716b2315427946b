"""Dense integer-coefficient polynomial kernels.

The Kronecker-substitution multiply packs a whole polynomial into one big
integer so a single gmpy2 multiplication does the convolution.  Signed
coefficients are handled by splitting into positive/negative parts (three
big multiplies).  This is the workhorse behind series and polynomial
products on the rational fast path.
"""

from __future__ import annotations

import math

_SCHOOLBOOK_CUTOFF = 24


def _max_abs(a: list[int]) -> int:
    return max((abs(x) for x in a), default=0)


def _pack(a: list[int], width: int) -> int:
    n = 0
    for c in reversed(a):
        n = (n << width) | c
    return n


def _unpack(n: int, width: int, length: int) -> list[int]:
    mask = (1 << width) - 1
    out = []
    for _ in range(length):
        out.append(n & mask)
        n >>= width
    return out


def mul_int(a: list[int], b: list[int]) -> list[int]:
    """Convolution of integer coefficient lists."""
    if not a or not b:
        return []
    la, lb = len(a), len(b)
    if la * lb <= _SCHOOLBOOK_CUTOFF * _SCHOOLBOOK_CUTOFF:
        out = [0] * (la + lb - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] += ai * bj
        return out
    # Kronecker: split signs, pack, one multiply per sign pair combination
    ap = [x if x > 0 else 0 for x in a]
    an = [-x if x < 0 else 0 for x in a]
    bp = [x if x > 0 else 0 for x in b]
    bn = [-x if x < 0 else 0 for x in b]
    ma = _max_abs(a)
    mb = _max_abs(b)
    width = (ma.bit_length() + mb.bit_length() + min(la, lb).bit_length()) + 1
    length = la + lb - 1
    A_p, A_n = _pack(ap, width), _pack(an, width)
    B_p, B_n = _pack(bp, width), _pack(bn, width)
    pos = A_p * B_p + A_n * B_n
    neg = A_p * B_n + A_n * B_p
    cp = _unpack(pos, width, length)
    cn = _unpack(neg, width, length)
    return [p - n for p, n in zip(cp, cn)]


def content_int(a: list[int]) -> int:
    g = 0
    for c in a:
        g = math.gcd(g, c)
        if g == 1:
            return 1
    return g


def primitive_int(a: list[int]) -> list[int]:
    g = content_int(a)
    if g in (0, 1):
        return list(a)
    return [c // g for c in a]


def pseudo_rem_int(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of primitive integer polynomials (dense, b != 0)."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        da = len(a) - 1
        la = a[-1]
        # a := lb*a - la*x^(da-db)*b
        a = [lb * c for c in a]
        shift = da - db
        for i, bc in enumerate(b):
            a[shift + i] -= la * bc
        while a and a[-1] == 0:
            a.pop()
    return a


def _gcd_prs(a: list[int], b: list[int]) -> list[int]:
    """Primitive-PRS gcd; fine for small inputs."""
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = pseudo_rem_int(a, b)
        r = primitive_int(r)
        a, b = b, r
    if a and a[-1] < 0:
        a = [-c for c in a]
    return a


def _first_primes_above(start: int, count: int) -> list[int]:
    out = []
    n = start | 1
    while len(out) < count:
        for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
            if n % p == 0:
                break
        else:
            if pow(2, n - 1, n) == 1 and pow(3, n - 1, n) == 1:
                out.append(n)
        n += 2
    return out


_MOD_PRIMES = _first_primes_above(1 << 30, 64)


def _poly_mod(a: list[int], p: int) -> list[int]:
    r = [c % p for c in a]
    while r and r[-1] == 0:
        r.pop()
    return r


def _gcd_mod_p(a: list[int], b: list[int], p: int) -> list[int]:
    """Monic gcd mod p."""
    while b:
        # a mod b over GF(p)
        inv = pow(b[-1], p - 2, p)
        r = list(a)
        while len(r) >= len(b) and r:
            c = r[-1] * inv % p
            k = len(r) - len(b)
            for i, bc in enumerate(b):
                r[k + i] = (r[k + i] - c * bc) % p
            while r and r[-1] == 0:
                r.pop()
        a, b = b, r
    inv = pow(a[-1], p - 2, p)
    return [c * inv % p for c in a]


def _divides_exactly(g: list[int], a: list[int]) -> bool:
    """Exact division test for primitive integer polynomials over Q."""
    r = list(a)
    glc = g[-1]
    out_ok = True
    while r and len(r) >= len(g):
        c = r[-1]
        if c % glc:
            return False
        q = c // glc
        k = len(r) - len(g)
        for i, gc in enumerate(g):
            r[k + i] -= q * gc
        while r and r[-1] == 0:
            r.pop()
    return not r


def gcd_int(a: list[int], b: list[int]) -> list[int]:
    """Primitive gcd of integer polynomials (certified modular algorithm)."""
    import math as _math

    a = primitive_int([c for c in a])
    b = primitive_int([c for c in b])
    while a and a[-1] == 0:
        a.pop()
    while b and b[-1] == 0:
        b.pop()
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    if len(b) == 1:
        return [1]
    if len(a) <= 8 or (len(a) <= 24 and max(map(abs, a + b)).bit_length() < 64):
        return _gcd_prs(list(a), list(b))
    lcg = _math.gcd(a[-1], b[-1])
    best_deg = None
    acc = None
    mod = 1
    stable = 0
    for p in _MOD_PRIMES * 4:  # revisit with fresh primes is not needed; 256 tries
        if a[-1] % p == 0 or b[-1] % p == 0:
            continue
        g = _gcd_mod_p(_poly_mod(a, p), _poly_mod(b, p), p)
        d = len(g) - 1
        if d == 0:
            return [1]
        if best_deg is None or d < best_deg:
            best_deg = d
            # normalize leading coefficient to lcg mod p
            g = [c * lcg % p for c in g]
            acc = [c if c <= p // 2 else c - p for c in g]
            mod = p
            stable = 0
            continue
        if d > best_deg:
            continue
        g = [c * lcg % p for c in g]
        # CRT combine into symmetric residues
        new = []
        changed = False
        inv = pow(mod % p, p - 2, p)
        for i in range(best_deg + 1):
            x = acc[i]
            gi = g[i]
            t = (gi - x) % p
            t = t * inv % p
            y = x + mod * (t if t <= p // 2 else t - p)
            if y != x:
                changed = True
            new.append(y)
        acc = new
        mod *= p
        stable = 0 if changed else stable + 1
        if stable >= 1:
            cand = primitive_int(acc)
            if cand[-1] < 0:
                cand = [-c for c in cand]
            if _divides_exactly(cand, a) and _divides_exactly(cand, b):
                return cand
            stable = 0
    # fall back (should not happen)
    return _gcd_prs(list(a), list(b))
