"""Finite fields F_{p^n} with canonical moduli, and embeddings between them.

Every field is F_p[t]/(m(t)) where m is the lexicographically least monic
irreducible of degree n, comparing coefficient vectors constant term first.
Elements are dense coefficient vectors in the basis 1, t, ..., t^{n-1}.
The same lexicographic order on coefficient vectors fixes the enumeration
order of a field and breaks ties when a root has to be chosen.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import product

from sympy import factorint, isprime

from excmaps.errors import (
    DegreeTooLarge,
    DivisionByZero,
    FieldMismatch,
    NoEmbedding,
    NotPrime,
    ZeroElement,
)
from excmaps.algebra import _fp

DEFAULT_DEGREE_CAP = 24
ENUMERATION_CAP = 2**24
LOG_TABLE_CAP = 2**16


@dataclass(frozen=True)
class FieldDesc:
    p: int
    n: int
    modulus: tuple  # monic, constant term first, length n + 1
    _tables: dict = dc_field(default=None, compare=False, hash=False, repr=False)

    @property
    def q(self):
        return self.p**self.n

    @property
    def order(self):
        return self.q

    def __repr__(self):
        return f"GF({self.q})"

    def __str__(self):
        return f"GF({self.q})"

    # -- element construction -------------------------------------------------

    def __call__(self, value):
        """Build an element from an int (a constant) or a coefficient vector."""
        if isinstance(value, FFElem):
            if value.field != self:
                raise FieldMismatch(f"{value!r} is not in {self}")
            return value
        if isinstance(value, int):
            return FFElem(self, (value % self.p,) + (0,) * (self.n - 1))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.n:
            coeffs = _reduce(coeffs, self)
        return FFElem(self, tuple(coeffs) + (0,) * (self.n - len(coeffs)))

    @property
    def zero(self):
        return FFElem(self, (0,) * self.n)

    @property
    def one(self):
        return self(1)

    @property
    def gen(self):
        """The class of t; for prime fields this is 0 (the modulus is X)."""
        if self.n == 1:
            return self.zero
        return FFElem(self, (0, 1) + (0,) * (self.n - 2))

    def element_at(self, index):
        """Element number ``index`` in the lexicographic enumeration order."""
        coeffs = []
        for i in range(self.n):
            coeffs.append((index // self.p ** (self.n - 1 - i)) % self.p)
        return FFElem(self, tuple(coeffs))

    def elements(self):
        for coeffs in product(range(self.p), repeat=self.n):
            yield FFElem(self, coeffs)

    def nonzero_elements(self):
        it = self.elements()
        next(it)
        return it

    @property
    def has_log_tables(self):
        return self._tables is not None


@dataclass(frozen=True, eq=False)
class FFElem:
    field: FieldDesc
    coeffs: tuple

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        if not isinstance(other, FFElem):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.p, self.field.n, self.coeffs))

    def __lt__(self, other):
        _check_same(self, other)
        return self.coeffs < other.coeffs

    def __bool__(self):
        return any(self.coeffs)

    def is_zero(self):
        return not any(self.coeffs)

    @property
    def index(self):
        """Position in the lexicographic enumeration of the field."""
        idx = 0
        for c in self.coeffs:
            idx = idx * self.field.p + c
        return idx

    def _coerce(self, other):
        if isinstance(other, int):
            return self.field(other)
        _check_same(self, other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        p = self.field.p
        return FFElem(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        p = self.field.p
        return FFElem(self.field, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        p = self.field.p
        return FFElem(self.field, tuple(-a % p for a in self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        F = self.field
        if F.n == 1:
            return FFElem(F, (self.coeffs[0] * other.coeffs[0] % F.p,))
        if F._tables is not None:
            return _table_mul(self, other)
        prod = [0] * (2 * F.n - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        return FFElem(F, tuple(_reduce(prod, F)))

    __rmul__ = __mul__

    def inverse(self):
        F = self.field
        if self.is_zero():
            raise DivisionByZero(f"0 has no inverse in {F}")
        if F.n == 1:
            return FFElem(F, (pow(self.coeffs[0], F.p - 2, F.p),))
        g, s, _ = _fp.xgcd(list(self.coeffs), list(F.modulus), F.p)
        assert g == [1]
        return F(s)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise DivisionByZero("division by zero field element")
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def frobenius(self):
        return self**self.field.p

    def __repr__(self):
        return format_element(self)

    __str__ = __repr__


def _check_same(a, b):
    if not isinstance(b, FFElem) or a.field != b.field:
        raise FieldMismatch(f"operands live in different fields: {a!r}, {b!r}")


def _reduce(prod, F):
    """Reduce a coefficient list modulo the monic modulus of F; length n."""
    p, n, m = F.p, F.n, F.modulus
    prod = list(prod)
    for i in range(len(prod) - 1, n - 1, -1):
        c = prod[i] % p
        if c:
            for j in range(n):
                prod[i - n + j] -= c * m[j]
        prod[i] = 0
    out = [c % p for c in prod[:n]]
    return out + [0] * (n - len(out))


def format_element(a, var="t"):
    """Render as a polynomial in the generator, highest power first: ``2*t^2+t+1``."""
    terms = []
    for i in range(len(a.coeffs) - 1, -1, -1):
        c = a.coeffs[i]
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mon = var if i == 1 else f"{var}^{i}"
            terms.append(mon if c == 1 else f"{c}*{mon}")
    return "+".join(terms) if terms else "0"


# -- construction ---------------------------------------------------------------


def make_field(p, n=1, degree_cap=DEFAULT_DEGREE_CAP, log_tables=False):
    """Return F_{p^n} with its canonical (lexicographically least) modulus.

    Raises NotPrime, or DegreeTooLarge when n exceeds ``degree_cap`` or the
    field has more than ENUMERATION_CAP elements. With ``log_tables`` the
    field multiplies through discrete-log tables (only for <= 2^16 elements).
    """
    if not isinstance(p, int) or not isprime(p):
        raise NotPrime(f"{p} is not prime")
    if n < 1 or n > degree_cap:
        raise DegreeTooLarge(f"degree {n} outside 1..{degree_cap}")
    if p**n > ENUMERATION_CAP:
        raise DegreeTooLarge(f"GF({p}^{n}) exceeds the enumeration cap {ENUMERATION_CAP}")
    F = _canonical_field(p, n)
    if log_tables:
        return _with_tables(F)
    return F


@lru_cache(maxsize=None)
def _canonical_field(p, n):
    return FieldDesc(p, n, canonical_modulus(p, n))


@lru_cache(maxsize=None)
def canonical_modulus(p, n):
    for f in _fp.monic_polys(p, n):
        if _fp.is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def field_of_order(q, **kwargs):
    """F_q for a prime power q."""
    fac = factorint(q)
    if q < 2 or len(fac) != 1:
        raise NotPrime(f"{q} is not a prime power")
    ((p, n),) = fac.items()
    return make_field(int(p), int(n), **kwargs)


@lru_cache(maxsize=None)
def _with_tables(F):
    if F.q > LOG_TABLE_CAP:
        raise DegreeTooLarge(f"log tables are limited to {LOG_TABLE_CAP} elements")
    g = primitive_element(F)
    exp = [None] * (F.q - 1)
    log = {}
    x = F.one
    for i in range(F.q - 1):
        exp[i] = x.coeffs
        log[x.coeffs] = i
        x = x * g
    return FieldDesc(F.p, F.n, F.modulus, {"exp": exp, "log": log})


def _table_mul(a, b):
    F = a.field
    if a.is_zero() or b.is_zero():
        return F.zero
    t = F._tables
    return FFElem(F, t["exp"][(t["log"][a.coeffs] + t["log"][b.coeffs]) % (F.q - 1)])


# -- orders and primitive elements ---------------------------------------------------


def mult_order(a):
    """Least r >= 1 with a^r = 1."""
    if a.is_zero():
        raise ZeroElement("0 has no multiplicative order")
    r = a.field.q - 1
    for ell in factorint(r):
        while r % ell == 0 and (a ** (r // ell)) == a.field.one:
            r //= ell
    return r


def primitive_element(F):
    """Least element (in enumeration order) of multiplicative order q - 1."""
    for a in F.nonzero_elements():
        if mult_order(a) == F.q - 1:
            return a
    raise AssertionError("field has no primitive element")  # pragma: no cover


# -- embeddings -------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FieldEmbedding:
    src: FieldDesc
    dst: FieldDesc
    gen_image: FFElem

    def __post_init__(self):
        powers = [self.dst.one]
        for _ in range(self.src.n - 1):
            powers.append(powers[-1] * self.gen_image)
        object.__setattr__(self, "_powers", tuple(powers))

    def __call__(self, a):
        if a.field != self.src:
            raise FieldMismatch(f"{a!r} is not in {self.src}")
        out = self.dst.zero
        for c, pw in zip(a.coeffs, self._powers):
            if c:
                out = out + pw * c
        return out

    def __eq__(self, other):
        return (
            isinstance(other, FieldEmbedding)
            and self.src == other.src
            and self.dst == other.dst
            and self.gen_image == other.gen_image
        )

    def __hash__(self):
        return hash((self.src, self.dst, self.gen_image))

    @property
    def degree(self):
        return self.dst.n // self.src.n


def embed(src, dst):
    """Embedding F_{p^m} -> F_{p^{mk}} sending t to the least root of src.modulus."""
    return _embed(src, dst)


@lru_cache(maxsize=None)
def _embed(src, dst):
    if src.p != dst.p or dst.n % src.n:
        raise NoEmbedding(f"{src} does not embed in {dst}")
    if src == dst:
        return FieldEmbedding(src, dst, src.gen)
    from excmaps.algebra.vectorized import first_root_index

    idx = first_root_index(src.modulus, dst)
    return FieldEmbedding(src, dst, dst.element_at(idx))


def identity_embedding(F):
    return FieldEmbedding(F, F, F.gen)


def degree_extension(F, k):
    """F_{q^k} for F = F_q, built canonically over the prime field."""
    return make_field(F.p, F.n * k)


def is_frobenius_fixed(a):
    """Field axiom check: a^q == a."""
    return a ** a.field.q == a
