"""Property tests for the invariants each module promises."""

from math import gcd

from hypothesis import assume, given, settings, strategies as st

from excmaps.algebra.fields import embed, field_of_order, make_field
from excmaps.algebra.poly import INF, Poly, ProjPoint, RatFunc, eval_proj, frobenius_twist, ram_index, separable_core
from excmaps.exceptionality import is_exceptional
from excmaps.groups import (
    aut_trivial,
    galois_obstruction,
    is_exceptional_triple,
    lattice_triples,
    nt_ram_battery,
    t_ram_equiv,
)
from excmaps.laurent import LaurentSeries, nth_root_one_unit, roots_of_unity_constant

SMALL_Q = [2, 3, 4, 5, 7, 8, 9]
PROFILE = settings(max_examples=40, deadline=None)


@st.composite
def field_elems(draw, F, nonzero=False):
    return F.element_at(draw(st.integers(1 if nonzero else 0, F.q - 1)))


@st.composite
def polys(draw, F, max_deg=5, min_deg=0):
    d = draw(st.integers(min_deg, max_deg))
    coeffs = [draw(field_elems(F)) for _ in range(d)] + [draw(field_elems(F, nonzero=True))]
    return Poly(F, coeffs)


@st.composite
def ratfuncs(draw, qs=SMALL_Q, max_deg=4):
    F = field_of_order(draw(st.sampled_from(qs)))
    num = draw(polys(F, max_deg, min_deg=1))
    den = draw(polys(F, max_deg)) if draw(st.booleans()) else Poly(F, [1])
    f = RatFunc(num, den)
    assume(not f.is_constant())
    return f


# -- algebra -------------------------------------------------------------------------------------


@PROFILE
@given(st.data())
def test_embedding_homomorphism(data):
    p, m, k = data.draw(st.sampled_from([(2, 1, 4), (2, 2, 2), (3, 1, 3), (3, 2, 2), (5, 1, 2), (2, 3, 2)]))
    src, dst = make_field(p, m), make_field(p, m * k)
    e = embed(src, dst)
    a, b = data.draw(field_elems(src)), data.draw(field_elems(src))
    assert e(a * b) == e(a) * e(b)
    assert e(a + b) == e(a) + e(b)
    assert e(src.one) == dst.one


@PROFILE
@given(ratfuncs(), st.data())
def test_fiber_degree_accounting(f, data):
    F = f.field
    b = data.draw(field_elems(F))
    fib = f.num - f.den * b
    # the finite fiber has degree deg f minus the ramification of infinity over b
    at_inf = ram_index(f, INF) if eval_proj(f, None, INF) == ProjPoint(b) else 0
    assert fib.degree + at_inf == f.degree
    # multiplicities at the F_q-rational roots never exceed the fiber degree
    total = sum(fib.root_multiplicity(a) for a in F.elements())
    assert total <= fib.degree
    for a in F.elements():
        if fib.root_multiplicity(a):
            assert ram_index(f, ProjPoint(a)) == fib.root_multiplicity(a)


@PROFILE
@given(ratfuncs(qs=[2, 3, 4]), st.integers(1, 2))
def test_separable_core_roundtrip(f, e):
    g = frobenius_twist(f, e)
    core, e2 = separable_core(g)
    assert frobenius_twist(core, e2) == g
    assert e2 >= e
    F = f.field
    k = 2 if F.q <= 4 else 1
    dst = make_field(F.p, F.n * k)
    emb = embed(F, dst)
    for a in list(dst.elements())[:16]:
        assert eval_proj(g, emb, ProjPoint(a)) == eval_proj(frobenius_twist(core, e2), emb, ProjPoint(a))


# -- exceptionality ---------------------------------------------------------------------------------


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_verdict_invariant_under_affine_composition(data):
    F = field_of_order(data.draw(st.sampled_from([3, 4, 5, 7])))
    f = RatFunc(data.draw(polys(F, max_deg=3, min_deg=1)))
    a, c = data.draw(field_elems(F, nonzero=True)), data.draw(field_elems(F, nonzero=True))
    b, d = data.draw(field_elems(F)), data.draw(field_elems(F))
    inner = RatFunc(Poly(F, [d, c]))
    g = RatFunc(f.compose(inner).num * a + b)
    assert is_exceptional(f).kind == is_exceptional(g).kind


@settings(max_examples=20, deadline=None)
@given(st.data())
def test_verdict_invariant_under_frobenius(data):
    F = field_of_order(data.draw(st.sampled_from([2, 3, 4])))
    f = RatFunc(data.draw(polys(F, max_deg=3, min_deg=1)))
    assert is_exceptional(f).kind == is_exceptional(frobenius_twist(f)).kind


# -- groups ----------------------------------------------------------------------------------------------


def test_t_ram_agreement_including_unramified():
    triples = lattice_triples(4, totally_ramified=False)
    assert any(not t.G.is_transitive() for t in triples)
    for t in triples:
        rep = t_ram_equiv(t)
        assert rep.agreement
        assert rep.value == t.G.is_transitive()


def test_lattice_battery_and_implications_degree_4():
    for t in lattice_triples(4):
        rep = nt_ram_battery(t)
        assert rep.agreement
        if is_exceptional_triple(t):
            assert galois_obstruction(t) and aut_trivial(t)


# -- series ----------------------------------------------------------------------------------------------


@PROFILE
@given(st.data())
def test_root_roundtrip(data):
    F = field_of_order(data.draw(st.sampled_from([2, 3, 5, 7, 4, 9])))
    m = data.draw(st.integers(1, 12).filter(lambda m: m % F.p))
    N = data.draw(st.integers(1, 40))
    coeffs = [F.one] + [data.draw(field_elems(F)) for _ in range(N - 1)]
    u = LaurentSeries.from_coeffs(F, 0, coeffs)
    v = nth_root_one_unit(u, m)
    assert v.lead == 1 and v.precision == N
    assert (v**m).agrees_with(u)
    assert nth_root_one_unit(u, m) == v


@PROFILE
@given(st.sampled_from(SMALL_Q + [11, 13, 16]), st.integers(1, 40))
def test_roots_of_unity_count(q, r):
    F = field_of_order(q)
    if r % F.p == 0:
        return
    assert len(roots_of_unity_constant(r, F, precision=4)) == gcd(r, q - 1)
