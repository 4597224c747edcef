from math import gcd, lcm

import pytest

from excmaps.algebra.fields import embed, make_field
from excmaps.algebra.parse import parse_ratfunc
from excmaps.algebra.poly import eval_proj
from excmaps.errors import CapExceeded, ConstantMap, DegreeTooLarge
from excmaps.exceptionality import (
    Exceptional,
    Inconclusive,
    NotExceptional,
    carlitz_wan_scan,
    census_candidates,
    check_gcw,
    is_bijective_on,
    is_exceptional,
    jacobsthal_window,
    min_k,
)

import oracles


def f_(text):
    return parse_ratfunc(text)


def test_min_k_examples():
    assert min_k(5, 3) == 3
    assert min_k(3, 3) == 4
    assert min_k(2, 1) == 1
    # at the boundary q^k = d^4 the strict reading moves on
    assert min_k(3, 3, strict=True) == 5


@pytest.mark.parametrize("d", range(1, 13))
def test_jacobsthal_matches_sliding_window(d):
    assert jacobsthal_window(d) == oracles.jacobsthal_sliding(d)


def test_jacobsthal_examples_and_cap():
    assert jacobsthal_window(1) == 1
    assert jacobsthal_window(3) == 4
    assert jacobsthal_window(5) == 6
    with pytest.raises(DegreeTooLarge):
        jacobsthal_window(13)


def test_bijective_examples():
    assert is_bijective_on(f_("x^3 over GF(5)"), 1) == (True, None)
    ok, col = is_bijective_on(f_("x^3 over GF(5)"), 2)
    assert not ok and col.k == 2 and col.a != col.b
    assert is_bijective_on(f_("x over GF(2)"), 1) == (True, None)


def test_collision_witness_revalidates():
    f = f_("x^3 over GF(5)")
    ok, col = is_bijective_on(f, 2)
    emb = embed(f.field, make_field(5, 2))
    assert eval_proj(f, emb, col.a) == eval_proj(f, emb, col.b)
    # a nontrivial cube root of unity relates the pair
    assert (col.b.value / col.a.value) ** 3 == 1


@pytest.mark.parametrize(
    "text,k",
    [
        ("x^3 over GF(5)", 2),
        ("x^2+x over GF(3)", 2),
        ("(x^2+1)/(x) over GF(5)", 1),
        ("(x+1)/(x^2+2) over GF(7)", 1),
        ("1/x over GF(4)", 2),
        ("x^5+t*x over GF(4)", 1),
        ("(x^3+x)/(x^2+2) over GF(3)", 2),
    ],
)
def test_kernel_agrees_with_pointwise_oracle(text, k):
    f = f_(text)
    F = make_field(f.field.p, f.field.n * k)
    g = f.embed(embed(f.field, F))
    assert is_bijective_on(f, k)[0] == oracles.brute_bijective(g, F)


def test_verdict_examples():
    v = is_exceptional(f_("x^3 over GF(5)"))
    assert isinstance(v, Exceptional) and v.witness_k == 3
    v = is_exceptional(f_("x^3 over GF(7)"))
    assert isinstance(v, NotExceptional) and v.scanned_k == (3, 4, 5, 6)
    assert v.collision.k == 6
    v = is_exceptional(f_("x^3+x over GF(3)"))
    assert isinstance(v, Exceptional) and v.witness_k == 5 and v.scanned_k == (4, 5)
    v = is_exceptional(f_("x^2 over GF(3)"))
    assert isinstance(v, NotExceptional) and v.scanned_k == (3, 4)
    assert is_exceptional(f_("x^2 over GF(2)")).is_exceptional
    assert is_exceptional(f_("x over GF(2)")).is_exceptional


def test_frozen_collision_certificate():
    # first repeated image in enumeration order over GF(7^6)
    v = is_exceptional(f_("x^3 over GF(7)"))
    assert (repr(v.collision.a), repr(v.collision.b)) == ("t^5", "2*t^5")


def test_inconclusive_only_below_window():
    v = is_exceptional(f_("x^3 over GF(7)"), window_override=2)
    assert isinstance(v, Inconclusive) and v.scanned_k == (3, 4)
    v = is_exceptional(f_("x^3 over GF(7)"), window_override=5)
    assert isinstance(v, NotExceptional)


def test_verdict_errors():
    with pytest.raises(ConstantMap):
        is_exceptional(f_("2 over GF(5)"))
    with pytest.raises(CapExceeded):
        is_exceptional(f_("x^3 over GF(7)"), cap=1000)


def test_soundness_pair():
    for text in ["x^3 over GF(5)", "x^5 over GF(3)", "x^3+x over GF(3)", "(x^2+1)/(x) over GF(3)"]:
        f = f_(text)
        v = is_exceptional(f)
        if v.is_exceptional:
            assert f.field.q**v.witness_k >= v.degree**4
            assert is_bijective_on(f, v.witness_k)[0]
        else:
            c = v.collision
            emb = embed(f.field, make_field(f.field.p, f.field.n * c.k))
            assert c.a != c.b and eval_proj(f, emb, c.a) == eval_proj(f, emb, c.b)


def test_exceptional_bijective_at_every_coprime_k():
    for text in ["x^3 over GF(5)", "x^3+x over GF(3)", "x^5 over GF(3)"]:
        f = f_(text)
        v = is_exceptional(f)
        L = lcm(*range(1, v.degree + 1))
        for k in v.scanned_k:
            if gcd(k, L) == 1:
                assert is_bijective_on(f, k)[0]


def test_polynomial_p1_vs_affine_bijectivity():
    # a polynomial fixes infinity, so P^1 injectivity is affine injectivity
    for text in ["x^3 over GF(5)", "x^2+x over GF(4)", "x^4+x over GF(3)"]:
        f = f_(text)
        F = f.field
        affine = len({f.num(a) for a in F.elements()}) == F.q
        assert is_bijective_on(f, 1)[0] == affine


def test_check_gcw_profiles():
    rep = check_gcw(f_("x^3 over GF(5)"))
    prof = {repr(P): e for P, e in rep.profile}
    assert prof == {"0": 3, "1": 1, "2": 1, "3": 1, "4": 1, "inf": 3}
    assert rep.passed
    rep = check_gcw(f_("x^2 over GF(2)"))
    assert [e for _, e in rep.profile] == [2, 2, 2] and rep.passed
    rep = check_gcw(f_("x over GF(3)"))
    assert all(e == 1 for _, e in rep.profile) and rep.passed


def test_census_candidate_order():
    F = make_field(3)
    assert [repr(P) for P in census_candidates(F, 2)] == ["x^2", "x^2+x", "x^2+2*x"]
    assert [repr(P) for P in census_candidates(make_field(2), 2)] == ["x^2", "x^2+x"]


def test_census_examples():
    rep = carlitz_wan_scan(3, 2)
    assert rep.total == 3 and rep.exceptional == [] and not rep.violations
    rep = carlitz_wan_scan(2, 2)
    assert [repr(r.f) for r in rep.exceptional] == ["x^2"]
    rep = carlitz_wan_scan(2, 1)
    assert [repr(r.f) for r in rep.exceptional] == ["x"]


def test_census_resume_slices_concatenate():
    whole = carlitz_wan_scan(3, 3)
    parts = carlitz_wan_scan(3, 3, stop=4).results + carlitz_wan_scan(3, 3, start=4).results
    assert [r.f for r in parts] == [r.f for r in whole.results]


def test_census_parallel_matches_serial():
    a = carlitz_wan_scan(4, 3)
    b = carlitz_wan_scan(4, 3, jobs=2)
    assert [(r.f, r.verdict) for r in a.results] == [(r.f, r.verdict) for r in b.results]


def test_census_cap():
    with pytest.raises(CapExceeded):
        carlitz_wan_scan(5, 4, candidate_cap=10)
