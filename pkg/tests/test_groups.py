import random

import pytest

from excmaps.errors import (
    GroupTooLarge,
    InvalidTriple,
    NotGenerator,
    NotIntermediate,
    NotNormal,
    NotTransitive,
)
from excmaps.groups import (
    Action,
    ExcTriple,
    Perm,
    aut_trivial,
    affine_triple,
    all_subgroups,
    burnside_common_orbits,
    close_group,
    common_orbits_direct,
    count_equiv,
    galois_obstruction,
    intermediate_subgroups,
    is_exceptional_triple,
    lattice_triples,
    make_triple,
    nt_ram_battery,
    quotient_triple,
    relabel,
    sub_triple,
    subext_check,
    symmetric_group,
    t_ram_equiv,
    transitive_groups,
    triple_from_json,
    validate_triple,
)

import oracles

CYCLE3 = Perm([1, 2, 0])
SWAP01 = Perm([1, 0, 2])


def S3():
    return symmetric_group(3)


def A3():
    return close_group(3, [CYCLE3])


def trivial(n):
    return close_group(n, [])


# -- permutations and closure ---------------------------------------------------------------------


def test_perm_composition_convention():
    p, q = Perm([1, 2, 0]), Perm([1, 0, 2])
    assert (p * q)(0) == p(q(0)) == 2
    assert p * p.inverse() == Perm.identity(3)
    assert p.order() == 3 and q.order() == 2
    assert Perm.from_cycles(4, (0, 2)) == Perm([2, 1, 0, 3])


def test_close_group_examples():
    assert close_group(3, [CYCLE3]).order == 3
    G = close_group(3, [CYCLE3, SWAP01])
    assert G.order == 6
    assert list(G.elements) == sorted(G.elements)
    assert close_group(1, []).order == 1


def test_close_group_cap():
    with pytest.raises(GroupTooLarge):
        close_group(6, [Perm([1, 2, 3, 4, 5, 0]), Perm([1, 0, 2, 3, 4, 5])], cap=100)


def test_close_group_rejects_non_permutations():
    with pytest.raises(ValueError):
        close_group(3, [[0, 0, 1]])


@pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 6), (4, 30)])
def test_subgroup_counts_of_symmetric_groups(n, count):
    # 30 subgroups of S_4 is the classical count
    assert len(all_subgroups(n)) == count


def test_transitive_group_counts():
    # transitive subgroups (not up to conjugacy) of S_4: 3 C4 + 1 V4 + 3 D4 + A4 + S4
    assert len(transitive_groups(4)) == 9
    assert len(transitive_groups(5)) == 20


# -- triples -------------------------------------------------------------------------------------


def test_validate_examples():
    assert all(validate_triple(affine_triple(3, 2)).flags.values())
    assert all(validate_triple(affine_triple(1, 0)).flags.values())
    t = ExcTriple(3, S3(), trivial(3), SWAP01)
    diag = validate_triple(t, strict=False)
    assert diag.flags["normal"] and not diag.totally_ramified
    # S_3 / 1 is not cyclic, so the quotient flag fails as well
    assert diag.first_failure == "cyclic_quotient"
    with pytest.raises(InvalidTriple) as err:
        validate_triple(t)
    assert err.value.flag == "cyclic_quotient"


def test_validate_flags_failures():
    t = ExcTriple(3, A3(), close_group(3, [SWAP01]), CYCLE3)
    assert validate_triple(t, strict=False).first_failure == "G_in_A"
    t = ExcTriple(3, S3(), close_group(3, [SWAP01]), CYCLE3)
    assert validate_triple(t, strict=False).first_failure == "normal"
    t = ExcTriple(3, A3(), A3(), SWAP01)
    assert validate_triple(t, strict=False).first_failure == "frob_in_A"


def test_t_ram_examples():
    assert all(t_ram_equiv(affine_triple(3, 2)).items.values())
    rep = t_ram_equiv(ExcTriple(3, S3(), A3(), SWAP01))
    assert all(rep.items.values())
    rep = t_ram_equiv(ExcTriple(3, S3(), trivial(3), SWAP01))
    assert not any(rep.items.values())


def test_burnside_examples():
    one = trivial(1)
    assert burnside_common_orbits(one, one, Perm.identity(1), Action.natural(1)) == 1
    assert burnside_common_orbits(S3(), A3(), SWAP01, Action.natural(3)) == 1
    assert burnside_common_orbits(A3(), A3(), Perm.identity(3), Action.natural(3)) == 1
    assert len(common_orbits_direct(one, one, Action.natural(1))) == 1
    assert len(common_orbits_direct(S3(), A3(), Action.natural(3))) == 1
    assert len(common_orbits_direct(A3(), A3(), Action.natural(3))) == 1


def test_burnside_errors():
    with pytest.raises(NotNormal):
        burnside_common_orbits(S3(), close_group(3, [SWAP01]), SWAP01, Action.natural(3))
    with pytest.raises(NotGenerator):
        burnside_common_orbits(S3(), A3(), CYCLE3, Action.natural(3))


def test_count_examples():
    t = affine_triple(3, 2)
    assert all(count_equiv(t.A, t.G, 3).items.values())
    rep = count_equiv(A3(), A3(), 3)
    assert rep.agreement and rep.value is False
    one = trivial(1)
    assert all(count_equiv(one, one, 1).items.values())
    with pytest.raises(NotTransitive):
        count_equiv(S3(), trivial(3), 3)


def test_battery_examples():
    rep = nt_ram_battery(affine_triple(3, 2))
    assert len(rep.items) == 14 and all(rep.items.values())
    rep = nt_ram_battery(affine_triple(3, 1))
    assert rep.agreement and not any(rep.items.values())
    assert all(nt_ram_battery(affine_triple(1, 0)).items.values())


def test_battery_requires_total_ramification():
    t = make_triple(3, [CYCLE3, SWAP01], [CYCLE3], SWAP01)
    assert nt_ram_battery(t).agreement
    bad = ExcTriple(4, close_group(4, [Perm([1, 2, 3, 0])]), close_group(4, [Perm([2, 3, 0, 1])]), Perm([1, 2, 3, 0]))
    with pytest.raises(InvalidTriple):
        nt_ram_battery(bad)


def test_is_exceptional_triple_examples():
    assert is_exceptional_triple(affine_triple(3, 2))
    assert not is_exceptional_triple(affine_triple(3, 1))
    assert is_exceptional_triple(affine_triple(1, 0))


def test_galois_and_aut_examples():
    assert galois_obstruction(affine_triple(3, 2))
    assert not galois_obstruction(affine_triple(3, 1))
    assert galois_obstruction(affine_triple(1, 0))
    assert aut_trivial(affine_triple(3, 2))
    assert not aut_trivial(affine_triple(3, 1))
    assert not aut_trivial(affine_triple(4, 1))
    assert aut_trivial(affine_triple(1, 0))


# -- intermediate subgroups and towers ------------------------------------------------------------------


def test_intermediate_examples():
    t = affine_triple(6, 5)
    Bs = intermediate_subgroups(t)
    assert sorted(t.A.order // B.order for B in Bs) == [1, 2, 3, 6]
    t = affine_triple(5, 2)
    assert [B.order for B in intermediate_subgroups(t)] == [t.A1.order, t.A.order]
    t = affine_triple(1, 0)
    assert intermediate_subgroups(t) == [t.A]


@pytest.mark.parametrize("n,mult", [(4, 3), (6, 5), (8, 3), (8, 5), (9, 2), (6, 1)])
def test_blocks_match_transversal_closure(n, mult):
    t = affine_triple(n, mult)
    a = intermediate_subgroups(t, "blocks")
    b = intermediate_subgroups(t, "closure")
    assert [B.element_set for B in a] == [B.element_set for B in b]


def test_lattice_intermediates_match_closure():
    for t in lattice_triples(4):
        a = intermediate_subgroups(t, "blocks")
        b = intermediate_subgroups(t, "closure")
        assert {B.element_set for B in a} == {B.element_set for B in b}


def test_subext_examples():
    t = affine_triple(6, 5)
    for B in intermediate_subgroups(t):
        assert subext_check(t, B).holds
    r = subext_check(t, t.A1)
    assert r.lower and r.upper == r.whole
    r = subext_check(t, t.A)
    assert r.upper and r.lower == r.whole
    assert quotient_triple(t, t.A).n == 1
    assert sub_triple(t, t.A1).n == 1


def test_subext_rejects_non_intermediate():
    t = affine_triple(6, 5)
    with pytest.raises(NotIntermediate):
        subext_check(t, t.G)


def test_derived_triples_are_valid():
    for t in lattice_triples(4):
        for B in intermediate_subgroups(t):
            validate_triple(quotient_triple(t, B), require_totally_ramified=True)
            validate_triple(sub_triple(t, B), require_totally_ramified=True)


def test_triple_json_roundtrip():
    t = affine_triple(5, 2)
    u = triple_from_json(t.to_json())
    assert u.A == t.A and u.G == t.G and u.frob == t.frob
    with pytest.raises(InvalidTriple):
        triple_from_json({"n": 3})


# -- oracle cross-checks ----------------------------------------------------------------------------


def _random_configs(count, seed=7):
    rng = random.Random(seed)
    out = []
    pool = [t for t in lattice_triples(5, totally_ramified=False)]
    while len(out) < count:
        t = rng.choice(pool)
        action = rng.choice([Action.natural(t.n), Action.diagonal(t.n)])
        sigma = t.frob * rng.choice(t.G.elements)
        out.append((t.A, t.G, sigma, action))
    return out


def test_burnside_matches_brute_force_orbits():
    for H1, H2, sigma, action in _random_configs(60):
        total, size = oracles.fixed_point_average(H2.elements, sigma, action.points, action.act)
        assert total % size == 0
        expected = oracles.brute_common_orbit_count(H1.elements, H2.elements, action.points, action.act)
        assert burnside_common_orbits(H1, H2, sigma, action) == expected == total // size
        assert len(common_orbits_direct(H1, H2, action)) == expected


def test_conjugation_invariance():
    rng = random.Random(3)
    triples = lattice_triples(4)
    for t in rng.sample(triples, 10):
        pi = Perm(rng.sample(range(t.n), t.n))
        # relabel, then keep the base at 0 by conjugating with a transversal element
        u = relabel(t, pi)
        back = u.transversal[pi[0]] if pi[0] != 0 else Perm.identity(t.n)
        w = relabel(u, back.inverse())
        assert nt_ram_battery(w).items == nt_ram_battery(t).items
        g = rng.choice(t.G.elements)
        v = ExcTriple(t.n, t.A, t.G, g * t.frob * g.inverse(), 0)
        assert nt_ram_battery(v).items == nt_ram_battery(t).items
