"""Dense polynomials over a prime field F_p, as lists of ints.

Coefficients are stored constant term first, fully reduced mod p, with no
trailing zeros (the zero polynomial is the empty list). These helpers back
field construction and inversion; user-facing polynomials live in ``poly``.
"""

from functools import lru_cache
from itertools import product


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def add(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return trim(out)


def sub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return trim(out)


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([c % p for c in out])


def divmod_(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    if len(a) <= db:
        return [], trim(a)
    quot = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c:
            c = c * inv_lead % p
            quot[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return trim(quot), trim(a[:db])


def xgcd(a, b, p):
    """Return (g, s, t) with s*a + t*b = g and g monic (or zero)."""
    r0, r1 = trim(a), trim(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    if r0:
        c = pow(r0[-1], p - 2, p)
        r0 = [x * c % p for x in r0]
        s0 = [x * c % p for x in s0]
        t0 = [x * c % p for x in t0]
    return r0, s0, t0


def monic_polys(p, d):
    """All monic degree-d polynomials, lexicographic on (c_0, ..., c_{d-1})."""
    for low in product(range(p), repeat=d):
        yield list(low) + [1]


@lru_cache(maxsize=None)
def monic_irreducibles(p, d):
    """Monic irreducibles of degree d, in the same lexicographic order."""
    return tuple(tuple(f) for f in monic_polys(p, d) if is_irreducible(f, p))


def is_irreducible(f, p):
    """Trial division by every monic irreducible of degree <= deg(f)/2.

    Dividing by irreducibles only is equivalent to dividing by all monic
    polynomials of those degrees, since any proper factor has an
    irreducible factor of no larger degree.
    """
    f = trim(f)
    n = len(f) - 1
    if n < 1:
        return False
    for d in range(1, n // 2 + 1):
        for g in monic_irreducibles(p, d):
            if not divmod_(f, list(g), p)[1]:
                return False
    return True
