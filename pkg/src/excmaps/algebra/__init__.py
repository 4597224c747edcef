"""Finite fields, polynomials and rational maps on the projective line."""

from excmaps.algebra.fields import (
    DEFAULT_DEGREE_CAP,
    ENUMERATION_CAP,
    FFElem,
    FieldDesc,
    FieldEmbedding,
    embed,
    field_of_order,
    identity_embedding,
    make_field,
    mult_order,
    primitive_element,
)
from excmaps.algebra.parse import format_map, parse_poly, parse_ratfunc
from excmaps.algebra.poly import (
    INF,
    Poly,
    ProjPoint,
    RatFunc,
    eval_proj,
    fiber_polynomial,
    frobenius_twist,
    ram_index,
    separable_core,
)


def field_arith(a, b, op):
    """Apply one of 'add', 'sub', 'mul', 'div' to two elements of one field."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")
