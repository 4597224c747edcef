"""Text syntax for maps over finite fields.

    x^3+2*x+1 over GF(5)
    (t+1)*x^2+t over GF(9)
    (x^2+1)/(x) over GF(7)

Coefficients in extension fields are polynomials in ``t``, the class of the
generator modulo the canonical modulus. ``format_*`` produce a canonical
string that ``parse_*`` reads back to an equal object.
"""

import re
from tokenize import TokenError

import sympy
from sympy.polys.polyerrors import BasePolynomialError
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from excmaps.errors import ParseError
from excmaps.algebra.fields import field_of_order, format_element

_OVER_RE = re.compile(r"^\s*(?P<expr>.+?)\s+over\s+GF\(\s*(?P<q>\d+)\s*\)\s*(?P<rest>.*)$", re.S)
_TRANSFORMS = standard_transformations + (convert_xor,)


def split_over(text):
    """Split ``"<expr> over GF(q) <rest>"`` into (expr, q, rest)."""
    m = _OVER_RE.match(text)
    if not m:
        raise ParseError(f"expected '<expression> over GF(q)', got {text!r}")
    return m.group("expr"), int(m.group("q")), m.group("rest").strip()


def sympify_text(expr, names):
    syms = {name: sympy.Symbol(name) for name in names}
    try:
        return parse_expr(expr, local_dict=syms, transformations=_TRANSFORMS, evaluate=True), syms
    except (SyntaxError, TypeError, sympy.SympifyError, TokenError) as exc:
        raise ParseError(f"cannot parse {expr!r}: {exc}") from exc


def _rational_mod(c, p):
    c = sympy.Rational(c)
    if c.q % p == 0:
        raise ParseError(f"coefficient {c} has a denominator divisible by {p}")
    return int(c.p) * pow(int(c.q), -1, p) % p


def field_elem_from_sympy(expr, F, gen_name="t"):
    """Reduce a sympy polynomial in the generator symbol into F."""
    gen = sympy.Symbol(gen_name)
    expr = sympy.expand(expr)
    free = expr.free_symbols - {gen}
    if free:
        raise ParseError(f"unexpected symbols {sorted(map(str, free))} in a coefficient")
    if gen in expr.free_symbols and F.n == 1:
        raise ParseError(f"'{gen_name}' is meaningless over the prime field GF({F.p})")
    try:
        P = sympy.Poly(expr, gen, domain="QQ")
    except BasePolynomialError as exc:
        raise ParseError(f"coefficient {expr} is not a polynomial in {gen_name}") from exc
    coeffs = [_rational_mod(c, F.p) for c in reversed(P.all_coeffs())]
    return F(coeffs)


def parse_ratfunc(text, field=None):
    """Parse ``"<f(x)> over GF(q)"`` into a RatFunc."""
    from excmaps.algebra.poly import Poly, RatFunc

    expr, q, rest = split_over(text)
    if rest:
        raise ParseError(f"unexpected trailing text {rest!r}")
    F = field if field is not None else field_of_order(q)
    if F.q != q:
        raise ParseError(f"GF({q}) does not match the supplied field {F}")
    e, syms = sympify_text(expr, ("x", "t"))
    x = syms["x"]
    if e.has(sympy.zoo, sympy.oo, sympy.nan):
        raise ParseError(f"{expr!r} is not finite")
    num, den = sympy.fraction(sympy.together(e))
    polys = []
    for part in (num, den):
        try:
            P = sympy.Poly(sympy.expand(part), x)
        except BasePolynomialError as exc:
            raise ParseError(f"{part} is not a polynomial in x") from exc
        coeffs = [field_elem_from_sympy(c, F) for c in reversed(P.all_coeffs())]
        polys.append(Poly(F, coeffs))
    if polys[1].is_zero():
        raise ParseError("denominator is zero")
    return RatFunc(polys[0], polys[1])


def parse_poly(text, field=None):
    f = parse_ratfunc(text, field)
    if not f.is_polynomial():
        raise ParseError(f"{text!r} is not a polynomial")
    return f.num


def _format_coeff(c, power, var="x"):
    s = format_element(c)
    if power == 0:
        return s
    mon = var if power == 1 else f"{var}^{power}"
    if s == "1":
        return mon
    if "t" in s:
        return f"({s})*{mon}"
    return f"{s}*{mon}"


def format_poly(P, var="x"):
    terms = [_format_coeff(c, i, var) for i, c in reversed(list(enumerate(P.coeffs))) if c]
    return "+".join(terms) if terms else "0"


def format_ratfunc(f):
    if f.is_polynomial():
        return format_poly(f.num)
    return f"({format_poly(f.num)})/({format_poly(f.den)})"


def format_map(f):
    """Canonical literal including the field, e.g. ``x^3 over GF(5)``."""
    return f"{format_ratfunc(f)} over GF({f.field.q})"
