"""Independent reference computations used to derive expected values.

Nothing here calls into the numpy kernels or the group/series machinery
under test; each oracle takes the most literal route to its answer.
"""

from itertools import product
from math import gcd, lcm

import sympy


def monic_polys(p, d):
    """Monic degree-d polynomials over F_p as coefficient tuples, constant term first."""
    for low in product(range(p), repeat=d):
        yield tuple(low) + (1,)


def polymul_mod(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return tuple(out)


def irreducibles_by_products(p, d):
    """Monic irreducibles of degree d: those not a product of two monic polynomials of lower degree."""
    reducible = set()
    for k in range(1, d // 2 + 1):
        for a in monic_polys(p, k):
            for b in monic_polys(p, d - k):
                reducible.add(polymul_mod(a, b, p))
    return [f for f in monic_polys(p, d) if f not in reducible]


def least_modulus(p, d):
    """Lexicographically least irreducible, comparing (c0, c1, ..., c_{d-1})."""
    return min(irreducibles_by_products(p, d))


def sympy_mul(a, b, modulus, p):
    """Multiply two F_p[t]/(m) elements (coefficient lists, constant first) using sympy."""
    t = sympy.Symbol("t")

    def P(c):
        return sympy.Poly(list(reversed(c)), t, modulus=p)

    r = (P(a) * P(b)).rem(P(modulus))
    coeffs = [int(c) % p for c in reversed(r.all_coeffs())]
    n = len(modulus) - 1
    return tuple(coeffs + [0] * (n - len(coeffs)))[:n]


def jacobsthal_sliding(d):
    """Least w such that every run of w consecutive integers meets a unit mod lcm(1..d)."""
    L = lcm(*range(1, d + 1))
    coprime = [gcd(x, L) == 1 for x in range(2 * L + 1)]
    w = 1
    while True:
        if all(any(coprime[s : s + w]) for s in range(L + 1)):
            return w
        w += 1


def brute_bijective(f, F):
    """Evaluate f on every point of P^1(F) element by element; True iff injective."""
    from excmaps.algebra.poly import INF, ProjPoint, eval_proj

    pts = [ProjPoint(a) for a in F.elements()] + [INF]
    images = [eval_proj(f, None, P) for P in pts]
    return len(set(images)) == len(images)


def brute_common_orbit_count(H1_elems, H2_elems, points, act):
    """Orbits computed by applying every group element, not just generators."""

    def orbits(elems):
        out = set()
        for x in points:
            out.add(frozenset(act(g, x) for g in elems))
        return out

    return len(orbits(H1_elems) & orbits(H2_elems))


def fixed_point_average(H2_elems, sigma, points, act):
    total = sum(sum(1 for x in points if act(sigma * h, x) == x) for h in H2_elems)
    return total, len(H2_elems)


def series_mul_naive(a, b, N):
    """Product of two coefficient lists (FFElem) truncated to N terms."""
    F = a[0].field
    out = [F.zero] * N
    for i in range(min(N, len(a))):
        for j in range(min(N - i, len(b))):
            out[i + j] = out[i + j] + a[i] * b[j]
    return out


def binomial_root_coeffs(c, m, p, N):
    """(1 + c t)^(1/m) mod p via the rational binomial series, N terms."""
    from fractions import Fraction

    out, binom = [], Fraction(1)
    for k in range(N):
        val = binom * Fraction(c) ** k
        out.append(val.numerator * pow(val.denominator, -1, p) % p)
        binom = binom * (Fraction(1, m) - k) / (k + 1)
    return out


def binomial_root_literal(c, m, p, N):
    terms = []
    for k, a in enumerate(binomial_root_coeffs(c, m, p, N)):
        if not a:
            continue
        mon = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        terms.append(str(a) if not mon else (mon if a == 1 else f"{a}*{mon}"))
    return "+".join(terms) + f" over GF({p}) prec {N}"
