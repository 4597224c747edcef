"""Univariate polynomials and rational functions over F_q, and maps on P^1."""

from __future__ import annotations

from dataclasses import dataclass

from excmaps.errors import ConstantMap, DivisionByZero, FieldMismatch
from excmaps.algebra.fields import FFElem


class Poly:
    """Polynomial over a FieldDesc; ``coeffs`` constant term first, no trailing zeros."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs=()):
        coeffs = [field(c) for c in coeffs]
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)

    @classmethod
    def x(cls, field):
        return cls(field, [0, 1])

    @classmethod
    def const(cls, field, c):
        return cls(field, [c])

    @classmethod
    def monomial(cls, field, d, c=1):
        return cls(field, [0] * d + [c])

    @property
    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly(self.field, [other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def _coerce(self, other):
        if isinstance(other, (int, FFElem)):
            return Poly(self.field, [other])
        if other.field != self.field:
            raise FieldMismatch(f"polynomials over {self.field} and {other.field}")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.field, [self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return Poly(self.field)
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return Poly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, e):
        result = Poly(self.field, [1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.degree
        inv = other.lead.inverse()
        quot = [self.field.zero] * max(len(rem) - d, 0)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i] * inv
            if c:
                quot[i - d] = c
                for j in range(d + 1):
                    rem[i - d + j] = rem[i - d + j] - c * other.coeffs[j]
        return Poly(self.field, quot), Poly(self.field, rem[:d] if d > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        if self.is_zero():
            return self
        inv = self.lead.inverse()
        return Poly(self.field, [c * inv for c in self.coeffs])

    def gcd(self, other):
        a, b = self, self._coerce(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def __call__(self, x):
        """Horner evaluation at a field element (or at a Poly, i.e. composition)."""
        if isinstance(x, Poly):
            acc = Poly(self.field)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        return Poly(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def reversed(self, d=None):
        """T^d * self(1/T), with d defaulting to the degree."""
        d = self.degree if d is None else d
        coeffs = list(self.coeffs) + [self.field.zero] * (d + 1 - len(self.coeffs))
        return Poly(self.field, coeffs[::-1])

    def map_coeffs(self, emb):
        return Poly(emb.dst, [emb(c) for c in self.coeffs])

    def root_multiplicity(self, a):
        """Multiplicity of a as a root (0 if not a root); self must be nonzero."""
        if self.is_zero():
            raise ValueError("the zero polynomial has no root multiplicity")
        linear = Poly(self.field, [-a, 1])
        mult, P = 0, self
        while P.degree >= 1:
            quot, rem = divmod(P, linear)
            if not rem.is_zero():
                break
            mult, P = mult + 1, quot
        return mult

    def __repr__(self):
        from excmaps.algebra.parse import format_poly

        return format_poly(self)


@dataclass(frozen=True, eq=False)
class ProjPoint:
    """A point of P^1: a finite field element, or infinity when ``value`` is None."""

    value: FFElem | None = None

    @classmethod
    def finite(cls, a):
        return cls(a)

    @classmethod
    def infinity(cls):
        return cls(None)

    @property
    def is_infinity(self):
        return self.value is None

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self.value == other.value

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return "inf" if self.value is None else repr(self.value)


INF = ProjPoint(None)


class RatFunc:
    """num/den in lowest terms with den monic and nonzero."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = Poly(num.field, [1])
        if num.field != den.field:
            raise FieldMismatch("numerator and denominator over different fields")
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        g = num.gcd(den)
        if g.degree > 0:
            num, den = num // g, den // g
        inv = den.lead.inverse()
        self.num = num * inv
        self.den = den * inv

    @classmethod
    def poly(cls, p):
        return cls(p)

    @property
    def field(self):
        return self.num.field

    @property
    def degree(self):
        return max(self.num.degree, self.den.degree)

    def is_polynomial(self):
        return self.den.degree == 0

    def is_constant(self):
        return self.degree <= 0

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def embed(self, emb):
        if emb is None or (emb.src == emb.dst):
            return self
        return RatFunc(self.num.map_coeffs(emb), self.den.map_coeffs(emb))

    def compose(self, g):
        """self(g(X)) for a rational function g over the same field."""
        d = self.degree
        # num(g) / den(g) with g = a/b: homogenise to degree d
        a, b = g.num, g.den
        top = Poly(self.field)
        bot = Poly(self.field)
        for i in range(d + 1):
            term = (a**i) * (b ** (d - i))
            top = top + term * self.num[i]
            bot = bot + term * self.den[i]
        return RatFunc(top, bot)

    def infinity_chart(self):
        """f(1/T) as a rational function in T."""
        D = self.degree
        return RatFunc(self.num.reversed(D), self.den.reversed(D))

    def __call__(self, x):
        return eval_proj(self, None, x if isinstance(x, ProjPoint) else ProjPoint(x))

    def __repr__(self):
        from excmaps.algebra.parse import format_ratfunc

        return format_ratfunc(self)


def eval_proj(f, emb, x):
    """Image of x in P^1 under f, with f's coefficients pushed through ``emb``.

    The point at infinity is handled in the chart X = 1/T at T = 0.
    """
    g = f.embed(emb)
    if g.is_constant():
        raise ConstantMap("eval_proj needs a nonconstant map")
    if x.is_infinity:
        return _eval_finite(g.infinity_chart(), g.field.zero)
    if x.value.field != g.field:
        raise FieldMismatch(f"point {x!r} is not over {g.field}")
    return _eval_finite(g, x.value)


def _eval_finite(g, a):
    d = g.den(a)
    if d.is_zero():
        return INF
    return ProjPoint(g.num(a) / d)


def ram_index(f, a, emb=None):
    """Ramification index of f at the point a of P^1.

    For finite a with finite image b this is the multiplicity of (X - a) in
    num - b*den; at a pole it is the multiplicity of (X - a) in den. At
    infinity the same rule is applied to f(1/T) at T = 0.
    """
    g = f.embed(emb)
    if g.is_constant():
        raise ConstantMap("ramification index of a constant map")
    if a.is_infinity:
        return _ram_finite(g.infinity_chart(), g.field.zero)
    if a.value.field != g.field:
        raise FieldMismatch(f"point {a!r} is not over {g.field}")
    return _ram_finite(g, a.value)


def _ram_finite(g, a):
    image = _eval_finite(g, a)
    if image.is_infinity:
        return g.den.root_multiplicity(a)
    return (g.num - g.den * image.value).root_multiplicity(a)


def separable_core(f):
    """Return (g, e) with f = g(X^(p^e)), g not a function of X^p, e maximal."""
    if f.is_constant():
        raise ConstantMap("separable core of a constant map")
    p = f.field.p
    num, den, e = f.num, f.den, 0
    while all(not c or i % p == 0 for P in (num, den) for i, c in enumerate(P.coeffs)):
        num = Poly(f.field, num.coeffs[::p])
        den = Poly(f.field, den.coeffs[::p])
        e += 1
    return RatFunc(num, den), e


def frobenius_twist(f, e=1):
    """f(X^(p^e))."""
    step = f.field.p**e
    F = f.field

    def spread(P):
        out = [F.zero] * (P.degree * step + 1) if not P.is_zero() else []
        for i, c in enumerate(P.coeffs):
            out[i * step] = c
        return Poly(F, out)

    return RatFunc(spread(f.num), spread(f.den))


def fiber_polynomial(f, b):
    """num - b*den, whose roots (with multiplicity) are the finite preimages of b."""
    return f.num - f.den * b
