"""Deciding exceptionality of rational maps over F_q, and the degree census.

A nonconstant f in F_q(X) is exceptional when it permutes P^1(F_{q^k}) for
infinitely many k; it suffices to find one k with q^k >= deg^4 at which f is
bijective. The decision procedure scans a window of consecutive k starting at
that bound. The window is wide enough to contain some k coprime to every
possible constant-field degree (a divisor of lcm(1..d)), so when every k in it
has a collision the map is not exceptional.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import gcd, lcm

from excmaps.errors import CapExceeded, ConstantMap, DegreeTooLarge
from excmaps.algebra.fields import ENUMERATION_CAP, embed, field_of_order, make_field
from excmaps.algebra.poly import INF, Poly, ProjPoint, RatFunc, eval_proj, ram_index, separable_core
from excmaps.algebra.vectorized import MapKernel, first_collision

CENSUS_DEGREE_CAP = 12
CENSUS_CANDIDATE_CAP = 10**6
WINDOW_BASIS = "window = Jacobsthal g(lcm(1..d)), d = degree of the separable core"


# -- verdicts -----------------------------------------------------------------------


@dataclass(frozen=True)
class Collision:
    a: ProjPoint
    b: ProjPoint
    k: int


@dataclass(frozen=True)
class Verdict:
    scanned_k: tuple
    degree: int  # degree of the separable core the bound is computed from
    window: int  # sound window width for that degree

    kind = "verdict"

    @property
    def is_exceptional(self):
        return self.kind == "exceptional"


@dataclass(frozen=True)
class Exceptional(Verdict):
    witness_k: int = 0
    kind = "exceptional"


@dataclass(frozen=True)
class NotExceptional(Verdict):
    collision: Collision = None
    basis: str = WINDOW_BASIS
    kind = "not_exceptional"


@dataclass(frozen=True)
class Inconclusive(Verdict):
    kind = "inconclusive"


# -- bounds -----------------------------------------------------------------------------


def min_k(q, d, strict=False):
    """Least k with q^k >= d^4 (or q^k > d^4 when ``strict``)."""
    if q < 2 or d < 1:
        raise ValueError("need q >= 2 and d >= 1")
    target = d**4
    k, qk = 1, q
    while qk < target or (strict and qk == target):
        k += 1
        qk *= q
    return k


@lru_cache(maxsize=None)
def jacobsthal_window(d):
    """Jacobsthal function of lcm(1..d): the largest gap between integers coprime to it."""
    if d < 1 or d > CENSUS_DEGREE_CAP:
        raise DegreeTooLarge(f"degree {d} outside 1..{CENSUS_DEGREE_CAP}")
    L = lcm(*range(1, d + 1))
    totatives = [r for r in range(1, L + 1) if gcd(r, L) == 1]
    gaps = [b - a for a, b in zip(totatives, totatives[1:])]
    gaps.append(totatives[0] + L - totatives[-1])
    return max(gaps)


# -- bijectivity scans ------------------------------------------------------------------


def _check_cap(q, k, cap):
    if q**k > cap:
        raise CapExceeded(f"GF({q}^{k}) has more than {cap} elements")


def is_bijective_on(f, k, cap=ENUMERATION_CAP):
    """Whether f permutes P^1(F_{q^k}).

    Returns ``(True, None)`` or ``(False, Collision)`` where the collision is
    the first repeated image in enumeration order (infinity last).
    """
    if f.is_constant():
        raise ConstantMap("bijectivity of a constant map")
    F = f.field
    _check_cap(F.q, k, cap)
    dst = make_field(F.p, F.n * k)
    g = f.embed(embed(F, dst))
    kernel = MapKernel(g.num.coeffs, g.den.coeffs, dst)
    # a polynomial fixes infinity and sends nothing finite there
    inf_image = None
    if not g.is_polynomial():
        img = eval_proj(g, None, INF)
        inf_image = dst.q if img.is_infinity else img.value.index
    hit = first_collision(kernel, dst.q, inf_image)
    if hit is None:
        return True, None
    a, b = (INF if i == dst.q else ProjPoint(dst.element_at(i)) for i in hit)
    return False, Collision(a, b, k)


def is_exceptional(f, window_override=None, strict=False, cap=ENUMERATION_CAP):
    """Decide exceptionality of f, returning a certificate-bearing verdict."""
    if f.is_constant():
        raise ConstantMap("exceptionality of a constant map")
    core, _ = separable_core(f)
    d = core.degree
    q = f.field.q
    k0 = min_k(q, d, strict)
    w = jacobsthal_window(d)
    width = w if window_override is None else window_override
    if width < 1:
        raise ValueError("window must be positive")
    scanned = []
    collision = None
    for k in range(k0, k0 + width):
        _check_cap(q, k, cap)
        ok, collision = is_bijective_on(f, k, cap)
        scanned.append(k)
        if ok:
            return Exceptional(tuple(scanned), d, w, witness_k=k)
    if width < w:
        return Inconclusive(tuple(scanned), d, w)
    return NotExceptional(tuple(scanned), d, w, collision=collision)


# -- ramification checks -----------------------------------------------------------------


@dataclass(frozen=True)
class GcwReport:
    f: RatFunc
    verdict: Verdict
    profile: tuple  # ((ProjPoint, e), ...) over P^1(F_q), infinity last
    gcds: tuple
    violations: tuple

    @property
    def passed(self):
        return not self.violations


def rational_points(F):
    return [ProjPoint(a) for a in F.elements()] + [INF]


def ramification_profile(f):
    return tuple((P, ram_index(f, P)) for P in rational_points(f.field))


def check_gcw(f, verdict=None, **kwargs):
    """Ramification indices over P^1(F_q); if f is exceptional each must be coprime to q-1."""
    if verdict is None:
        verdict = is_exceptional(f, **kwargs)
    q = f.field.q
    profile = ramification_profile(f)
    gcds = tuple(gcd(e, q - 1) for _, e in profile)
    violations = ()
    if verdict.is_exceptional:
        violations = tuple(
            {"point": repr(P), "e": e, "gcd": g} for (P, e), g in zip(profile, gcds) if g != 1
        )
    return GcwReport(f, verdict, profile, gcds, violations)


# -- census ---------------------------------------------------------------------------------


NORMALIZED = "monic, constant term 0 (pre/post composition with degree-1 maps preserves exceptionality)"
FULL = "all polynomials of exact degree n"


@dataclass(frozen=True)
class CandidateResult:
    f: RatFunc
    verdict: Verdict
    gcw: GcwReport | None


@dataclass
class ScanReport:
    q: int
    n: int
    normalization: str
    total: int
    results: list
    elapsed: float = 0.0
    violations: list = field(default_factory=list)

    @property
    def exceptional(self):
        return [r for r in self.results if r.verdict.is_exceptional]


def census_candidates(F, n, full=False):
    """Degree-n polynomials in deterministic order.

    Normalized: x^n + c_{n-1} x^{n-1} + ... + c_1 x, ordered by
    (c_{n-1}, ..., c_1) in element enumeration order.
    """
    elems = list(F.elements())
    if not full:
        for high_first in product(elems, repeat=n - 1):
            yield Poly(F, [F.zero] + list(reversed(high_first)) + [F.one])
        return
    for lead in elems[1:]:
        for high_first in product(elems, repeat=n):
            yield Poly(F, list(reversed(high_first)) + [lead])


def census_size(q, n, full=False):
    return (q - 1) * q**n if full else q ** (n - 1)


def _classify(f, kwargs):
    verdict = is_exceptional(f, **kwargs)
    gcw = check_gcw(f, verdict) if verdict.is_exceptional else None
    return CandidateResult(f, verdict, gcw)


def _classify_batch(args):
    q, n, full, lo, hi, kwargs = args
    F = field_of_order(q)
    out = []
    for i, P in enumerate(census_candidates(F, n, full)):
        if i >= hi:
            break
        if i >= lo:
            out.append(_classify(RatFunc(P), kwargs))
    return out


def carlitz_wan_scan(
    q, n, full=False, jobs=1, candidate_cap=CENSUS_CANDIDATE_CAP, start=0, stop=None, **kwargs
):
    """Classify every normalized degree-n polynomial over F_q.

    Exceptional finds are checked against gcd(n, q-1) = 1 and against
    ramification coprimality at every F_q-rational point; any failure is
    recorded in ``violations``. Only candidates with index in [start, stop)
    are classified, which is how interrupted scans resume.
    """
    if n < 1:
        raise ValueError("degree must be positive")
    if n > CENSUS_DEGREE_CAP:
        raise DegreeTooLarge(f"census degree {n} exceeds {CENSUS_DEGREE_CAP}")
    total = census_size(q, n, full)
    if total > candidate_cap:
        raise CapExceeded(f"{total} candidates exceed the census cap {candidate_cap}")
    stop = total if stop is None else min(stop, total)
    F = field_of_order(q)
    t0 = time.perf_counter()
    if jobs <= 1:
        results = [
            _classify(RatFunc(P), kwargs)
            for i, P in enumerate(census_candidates(F, n, full))
            if start <= i < stop
        ]
    else:
        step = max(1, -(-(stop - start) // (jobs * 4)))
        batches = [(q, n, full, lo, min(lo + step, stop), kwargs) for lo in range(start, stop, step)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = [r for batch in pool.map(_classify_batch, batches) for r in batch]
    report = ScanReport(q, n, FULL if full else NORMALIZED, total, results)
    for r in results:
        if not r.verdict.is_exceptional:
            continue
        if gcd(n, q - 1) != 1:
            report.violations.append({"poly": repr(r.f), "reason": f"gcd({n}, {q - 1}) != 1"})
        for v in r.gcw.violations:
            report.violations.append({"poly": repr(r.f), "reason": "ramification index not coprime", **v})
    report.elapsed = time.perf_counter() - t0
    return report
