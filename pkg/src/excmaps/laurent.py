"""Truncated Laurent series over F_q, tame roots, and the Kummer monodromy model.

A series is known modulo t^(valuation + precision): ``coeffs[i]`` is the
coefficient of t^(valuation + i). Arithmetic keeps the precision that is
actually guaranteed. Inner loops work on enumeration indices through
addition and multiplication tables, since the root recursion is quadratic in
the precision.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import sympy

from excmaps.errors import (
    FieldMismatch,
    NotAUnit,
    NotCoprime,
    NotOneUnit,
    NotTotallyRamifiedShape,
    ParseError,
    WildOrder,
    WildRoot,
)
from excmaps.algebra.fields import FFElem, field_of_order, format_element, mult_order
from excmaps.algebra.parse import field_elem_from_sympy, split_over, sympify_text
from excmaps.groups import affine_triple, is_exceptional_triple

DEFAULT_PREC = 64
TABLE_CAP = 256


class _Ring:
    """Field arithmetic on enumeration indices."""

    def __init__(self, F):
        self.F = F
        self.zero = 0
        self.one = F.one.index
        if F.q <= TABLE_CAP:
            E = list(F.elements())
            M = [[(a * b).index for b in E] for a in E]
            A = [[(a + b).index for b in E] for a in E]
            N = [(-a).index for a in E]
            self.mul = lambda a, b: M[a][b]
            self.add = lambda a, b: A[a][b]
            self.neg = N.__getitem__
            self.elem = E.__getitem__
        else:
            at = F.element_at
            self.mul = lambda a, b: (at(a) * at(b)).index
            self.add = lambda a, b: (at(a) + at(b)).index
            self.neg = lambda a: (-at(a)).index
            self.elem = at

    def inv(self, a):
        return self.elem(a).inverse().index

    def of_int(self, k):
        return self.F(k).index

    def dot(self, xs, ys):
        """sum x_i * y_i over paired index sequences."""
        acc = 0
        mul, add = self.mul, self.add
        for x, y in zip(xs, ys):
            if x and y:
                acc = add(acc, mul(x, y))
        return acc


@lru_cache(maxsize=32)
def _ring(F):
    return _Ring(F)


@dataclass(frozen=True)
class LaurentSeries:
    field: object
    valuation: int
    coeffs: tuple
    precision: int

    # -- construction ---------------------------------------------------------

    @classmethod
    def from_indices(cls, F, lo, idx, abs_prec):
        """Normalise coefficient indices for t^lo, t^(lo+1), ... known below t^abs_prec."""
        idx = list(idx[: max(abs_prec - lo, 0)])
        k = 0
        while k < len(idx) and idx[k] == 0:
            k += 1
        if k == len(idx):
            return cls.zero(F, abs_prec)
        R = _ring(F)
        return cls(F, lo + k, tuple(R.elem(i) for i in idx[k:]), len(idx) - k)

    @classmethod
    def from_coeffs(cls, F, valuation, coeffs, precision=None):
        coeffs = [F(c) for c in coeffs]
        precision = len(coeffs) if precision is None else precision
        coeffs = coeffs[:precision] + [F.zero] * (precision - len(coeffs))
        return cls.from_indices(F, valuation, [c.index for c in coeffs], valuation + precision)

    @classmethod
    def zero(cls, F, abs_prec):
        """O(t^abs_prec): the single known coefficient, at t^(abs_prec - 1), is 0."""
        return cls(F, abs_prec - 1, (F.zero,), 1)

    @classmethod
    def constant(cls, F, c, precision=DEFAULT_PREC):
        return cls.from_coeffs(F, 0, [c], precision)

    @classmethod
    def monomial(cls, F, k, c=1, precision=DEFAULT_PREC):
        return cls.from_coeffs(F, k, [c], precision)

    # -- accessors ----------------------------------------------------------------

    @property
    def abs_precision(self):
        return self.valuation + self.precision

    def is_zero(self):
        return self.precision == 1 and self.coeffs[0].is_zero()

    @property
    def lead(self):
        return self.coeffs[0]

    def _lo(self):
        return self.abs_precision if self.is_zero() else self.valuation

    def indices(self):
        return [c.index for c in self.coeffs]

    def __getitem__(self, k):
        """Coefficient of t^k (must lie below the precision)."""
        if k >= self.abs_precision:
            raise IndexError(f"t^{k} is beyond the known precision O(t^{self.abs_precision})")
        if k < self.valuation:
            return self.field.zero
        return self.coeffs[k - self.valuation]

    def _check(self, other):
        if not isinstance(other, LaurentSeries):
            raise TypeError(f"cannot combine a series with {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"series over {self.field} and {other.field}")

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        F, R = self.field, _ring(self.field)
        top = min(self.abs_precision, other.abs_precision)
        lo = min(self._lo(), other._lo())
        if lo >= top:
            return LaurentSeries.zero(F, top)
        out = [0] * (top - lo)
        for s in (self, other):
            if s.is_zero():
                continue
            for i, c in enumerate(s.indices()):
                j = s.valuation + i - lo
                if j >= len(out):
                    break
                out[j] = R.add(out[j], c)
        return LaurentSeries.from_indices(F, lo, out, top)

    def __neg__(self):
        if self.is_zero():
            return self
        return LaurentSeries(self.field, self.valuation, tuple(-c for c in self.coeffs), self.precision)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, FFElem)):
            return self.scale(other)
        self._check(other)
        F = self.field
        if self.is_zero() or other.is_zero():
            return LaurentSeries.zero(F, min(self.abs_precision + other._lo(), other.abs_precision + self._lo()))
        R = _ring(F)
        a, b = self.indices(), other.indices()
        prec = min(self.precision, other.precision)
        out = [R.dot(a[: k + 1], b[k::-1]) for k in range(prec)]
        return LaurentSeries.from_indices(F, self.valuation + other.valuation, out, self.valuation + other.valuation + prec)

    __rmul__ = __mul__

    def scale(self, c):
        c = self.field(c)
        if c.is_zero():
            return LaurentSeries.zero(self.field, self.abs_precision)
        if self.is_zero():
            return self
        return LaurentSeries(self.field, self.valuation, tuple(c * a for a in self.coeffs), self.precision)

    def shift(self, k):
        """Multiply by t^k."""
        return LaurentSeries(self.field, self.valuation + k, self.coeffs, self.precision)

    def invert_unit(self):
        """Inverse of a valuation-0 series by the usual coefficient recursion."""
        if self.is_zero() or self.valuation != 0:
            raise NotAUnit(f"series of valuation {self._lo()} is not a unit")
        R = _ring(self.field)
        a = self.indices()
        inv0 = R.inv(a[0])
        minus_inv0 = R.neg(inv0)
        b = [inv0]
        for k in range(1, self.precision):
            b.append(R.mul(minus_inv0, R.dot(a[1 : k + 1], b[::-1])))
        return LaurentSeries.from_indices(self.field, 0, b, self.precision)

    def inverse(self):
        if self.is_zero():
            raise NotAUnit("the zero series has no inverse")
        return self.shift(-self.valuation).invert_unit().shift(-self.valuation)

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = LaurentSeries.constant(self.field, 1, self.precision)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def truncate(self, precision):
        if self.is_zero() or precision >= self.precision:
            return self
        return LaurentSeries.from_indices(self.field, self.valuation, self.indices(), self.valuation + precision)

    def agrees_with(self, other):
        """Equality up to the smaller of the two precisions."""
        return (self - other).is_zero()

    def __repr__(self):
        return format_series(self)


def series_arith(a, b, op):
    """Binary entry point: op is ``add``, ``mul`` or ``invert_unit`` (b unused)."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "invert_unit":
        return a.invert_unit()
    raise ValueError(f"unknown op {op!r}")


# -- tame roots -------------------------------------------------------------------------------


def nth_root_one_unit(u, m):
    """The unique m-th root of a 1-unit with constant term 1, for p not dividing m.

    v = 1 + b_1 t + b_2 t^2 + ...; the powers v^j (j <= m) are carried along
    and b_k is the one unknown entering [t^k] v^m, linearly with slope m.
    """
    F = u.field
    if m < 1:
        raise ValueError("m must be positive")
    if m % F.p == 0:
        raise WildRoot(f"{F.p} divides {m}")
    if u.is_zero() or u.valuation != 0 or u.lead != 1:
        raise NotOneUnit("need valuation 0 and constant term 1")
    R = _ring(F)
    N = u.precision
    uk = u.indices()
    one = R.one
    ints = [R.of_int(j) for j in range(m + 1)]
    inv_m = R.inv(ints[m])
    # P[j][k] = [t^k] v^j
    P = [None] + [[one] + [0] * (N - 1) for _ in range(m)]
    v = P[1]
    for k in range(1, N):
        # with b_k = 0: [t^k] v^j = [t^k] v^(j-1) + sum_{i<k} b_i [t^(k-i)] v^(j-1)
        resid = [0] * (m + 1)
        for j in range(2, m + 1):
            prev = P[j - 1]
            resid[j] = R.add(resid[j - 1], R.dot(v[1:k], prev[k - 1 : 0 : -1]))
        b = R.mul(R.add(uk[k], R.neg(resid[m])), inv_m)
        for j in range(1, m + 1):
            P[j][k] = R.add(resid[j], R.mul(ints[j], b))
    return LaurentSeries.from_indices(F, 0, v, N)


def tame_wild_split(n, p):
    """(m, l) with n = m * p^l and p not dividing m."""
    if n < 1:
        raise ValueError("n must be positive")
    m, l = n, 0
    while m % p == 0:
        m //= p
        l += 1
    return m, l


@dataclass(frozen=True)
class NormalizedRelation:
    """z = x^n * unit with unit having constant term 1; ``scalar`` is what z was multiplied by."""

    n: int
    series: LaurentSeries
    unit: LaurentSeries
    scalar: FFElem


def eisenstein_normalize(z_rel, n):
    if z_rel.is_zero() or z_rel.valuation != n:
        raise NotTotallyRamifiedShape(f"relation has valuation {z_rel._lo()}, expected {n}")
    scalar = z_rel.lead.inverse()
    series = z_rel.scale(scalar)
    return NormalizedRelation(n, series, series.shift(-n), scalar)


def tame_uniformizer(rel, p):
    """y = x^(p^l) * unit^(1/m), so that y^m = z."""
    m, l = tame_wild_split(rel.n, p)
    return nth_root_one_unit(rel.unit, m).shift(p**l)


def roots_of_unity_constant(r, F, precision=DEFAULT_PREC):
    """All valuation-0 solutions of v^r = 1: the constants c in F_q^* with c^r = 1."""
    if r < 1:
        raise ValueError("r must be positive")
    if r % F.p == 0:
        raise WildOrder(f"{F.p} divides {r}")
    return [LaurentSeries.constant(F, c, precision) for c in F.nonzero_elements() if c**r == 1]


@dataclass(frozen=True)
class TameExtensionModel:
    n: int
    q: int
    m: int
    wild_exp: int

    @classmethod
    def of(cls, n, q):
        p = field_of_order(q).p
        m, l = tame_wild_split(n, p)
        return cls(n, q, m, l)

    @property
    def is_tame(self):
        return self.wild_exp == 0


# -- Kummer model and the coprimality battery ------------------------------------------------


def _require_coprime(n, q):
    if n < 1:
        raise ValueError("n must be positive")
    if gcd(n, q) != 1:
        raise NotCoprime(f"gcd({n}, {q}) != 1")


def tame_monodromy_triple(n, q):
    """Roots zeta^i * y of X^n - z indexed by Z/n: G = translations, frob = i -> q*i."""
    _require_coprime(n, q)
    return affine_triple(n, q % n)


@dataclass(frozen=True)
class CoprimeReport:
    n: int
    q: int
    items: dict

    @property
    def agreement(self):
        return len(set(self.items.values())) == 1

    @property
    def value(self):
        return self.items["(1)"]


def coprime_battery(n, q):
    _require_coprime(n, q)
    F = field_of_order(q)
    nontrivial_root = any(n % mult_order(c) == 0 for c in F.nonzero_elements() if c != 1)
    return CoprimeReport(
        n,
        q,
        {
            "(1)": is_exceptional_triple(tame_monodromy_triple(n, q)),
            "(2)": gcd(n, q - 1) == 1,
            "(3)": not nontrivial_root,
            "(4)": not any(n % d == 0 and (q - 1) % d == 0 for d in range(2, n + 1)),
        },
    )


# -- literals -----------------------------------------------------------------------------------

_PREC_RE = re.compile(r"^prec\s+(\d+)$")


def parse_series(text, field=None):
    """Parse ``"t^-1 + 2 + t^3 over GF(5) prec 64"``; the precision defaults to 64.

    Over extension fields the residue generator is written ``w``.
    """
    expr, q, rest = split_over(text)
    precision = DEFAULT_PREC
    if rest:
        m = _PREC_RE.match(rest)
        if not m:
            raise ParseError(f"unexpected trailing text {rest!r}")
        precision = int(m.group(1))
    if precision < 1:
        raise ParseError("precision must be at least 1")
    F = field if field is not None else field_of_order(q)
    if F.q != q:
        raise ParseError(f"GF({q}) does not match the supplied field {F}")
    e, syms = sympify_text(expr, ("t", "w"))
    t = syms["t"]
    if e.has(sympy.zoo, sympy.oo, sympy.nan):
        raise ParseError(f"{expr!r} is not finite")
    terms = {}
    for term in sympy.Add.make_args(sympy.expand(e)):
        coeff, exp = term.as_coeff_exponent(t)
        if not exp.is_integer or t in coeff.free_symbols:
            raise ParseError(f"{term} is not a Laurent monomial in t")
        c = field_elem_from_sympy(coeff, F, gen_name="w")
        terms[int(exp)] = terms.get(int(exp), F.zero) + c
    terms = {k: c for k, c in terms.items() if c}
    if not terms:
        return LaurentSeries.zero(F, precision)
    lo = min(terms)
    return LaurentSeries.from_coeffs(F, lo, [terms.get(lo + i, 0) for i in range(precision)], precision)


def _format_term(c, k):
    s = format_element(c, var="w")
    if k == 0:
        return s
    mon = "t" if k == 1 else f"t^{k}"
    if s == "1":
        return mon
    if "w" in s:
        return f"({s})*{mon}"
    return f"{s}*{mon}"


def format_series(s):
    """Canonical literal, e.g. ``t^-1+2+t^3 over GF(5) prec 64``."""
    if s.is_zero():
        body = "0"
        prec = s.abs_precision
    else:
        terms = [_format_term(c, s.valuation + i) for i, c in enumerate(s.coeffs) if c]
        body = "+".join(terms)
        prec = s.precision
    return f"{body} over GF({s.field.q}) prec {prec}"
