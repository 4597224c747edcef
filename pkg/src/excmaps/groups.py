"""Permutation groups and exceptionality triples.

A triple (A, G, frob) models a totally ramified extension through its
monodromy: A acts transitively on S = {0, ..., n-1}, G is a normal subgroup
with A/G cyclic generated by the coset frob*G, and the base point 0 plays the
role of the extension itself. Everything is done by full element enumeration,
which is plenty for the degrees involved (n <= 30, |A| <= 10^5).

Permutations are tuples in one-line notation; ``(p * q)(i) = p(q(i))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, permutations

from excmaps.errors import (
    GroupTooLarge,
    InvalidTriple,
    NotGenerator,
    NotIntermediate,
    NotNormal,
    NotTransitive,
)

GROUP_CAP = 100_000


class Perm(tuple):
    """A permutation of {0, ..., n-1} in one-line notation."""

    def __new__(cls, images):
        return super().__new__(cls, images)

    @classmethod
    def identity(cls, n):
        return cls(range(n))

    @classmethod
    def from_cycles(cls, n, *cycles):
        img = list(range(n))
        for cyc in cycles:
            for i, x in enumerate(cyc):
                img[x] = cyc[(i + 1) % len(cyc)]
        return cls(img)

    @property
    def degree(self):
        return len(self)

    def __mul__(self, other):
        return Perm(self[i] for i in other)

    def __call__(self, i):
        return self[i]

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = Perm.identity(len(self))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self):
        inv = [0] * len(self)
        for i, x in enumerate(self):
            inv[x] = i
        return Perm(inv)

    def is_identity(self):
        return all(i == x for i, x in enumerate(self))

    def fixed_points(self):
        return [i for i, x in enumerate(self) if i == x]

    def num_fixed(self):
        return sum(1 for i, x in enumerate(self) if i == x)

    def order(self):
        r, p = 1, self
        while not p.is_identity():
            p = p * self
            r += 1
        return r

    def __repr__(self):
        return f"Perm({list(self)})"


def check_perm(images, n=None):
    if sorted(images) != list(range(len(images))) or (n is not None and len(images) != n):
        raise ValueError(f"{list(images)} is not a permutation of 0..{(n or len(images)) - 1}")
    return Perm(images)


class PermGroup:
    """Finite permutation group stored as its full (sorted) element list."""

    def __init__(self, n, gens, elements):
        self.n = n
        self.gens = tuple(gens)
        self.elements = tuple(sorted(elements))
        self.element_set = frozenset(self.elements)

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return g in self.element_set

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other):
        return isinstance(other, PermGroup) and self.element_set == other.element_set

    def __hash__(self):
        return hash(self.element_set)

    def __le__(self, other):
        return self.element_set <= other.element_set

    def __repr__(self):
        return f"PermGroup(n={self.n}, order={self.order})"

    @property
    def identity(self):
        return Perm.identity(self.n)

    def orbit(self, point):
        return orbit(self.gens, point)

    def orbits(self):
        return orbits_on(self.gens, range(self.n), _act_point)

    def is_transitive(self):
        return self.n == 0 or len(self.orbit(0)) == self.n

    def stabilizer(self, point):
        elems = [g for g in self.elements if g[point] == point]
        return group_from_elements(self.n, elems)

    def intersection(self, other):
        return group_from_elements(self.n, self.element_set & other.element_set)

    def is_normal_in(self, big):
        return all(g * h * g.inverse() in self for g in big.gens for h in self.gens)

    def coset_order(self, sigma):
        """Order of sigma modulo this group (assumed normal in a group containing sigma)."""
        r, p = 1, sigma
        while p not in self:
            p = p * sigma
            r += 1
        return r


def close_group(n, gens, cap=GROUP_CAP):
    """Breadth-first closure of ``gens`` under composition."""
    gens = [Perm(g) for g in gens]
    for g in gens:
        check_perm(g, n)
    ident = Perm.identity(n)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g * x
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise GroupTooLarge(f"closure exceeds {cap} elements")
        frontier = nxt
    return PermGroup(n, gens, seen)


def group_from_elements(n, elements):
    """Wrap a known element set (closed under composition) with a small generating set."""
    elements = sorted(elements)
    gens = []
    current = {Perm.identity(n)}
    for g in elements:
        if g not in current:
            gens.append(g)
            current = set(close_group(n, gens).elements)
    return PermGroup(n, gens, elements)


def symmetric_group(n):
    if n <= 1:
        return close_group(n, [])
    gens = [Perm.from_cycles(n, tuple(range(n))), Perm.from_cycles(n, (0, 1))]
    return close_group(n, gens)


# -- actions and orbits ------------------------------------------------------------------


def _act_point(g, x):
    return g[x]


def _act_pair(g, xy):
    return (g[xy[0]], g[xy[1]])


def orbit(gens, point, act=_act_point):
    seen = {point}
    stack = [point]
    while stack:
        x = stack.pop()
        for g in gens:
            y = act(g, x)
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return frozenset(seen)


def orbits_on(gens, points, act=_act_point):
    """Orbits of the group generated by ``gens`` on ``points``, in order of least member."""
    remaining = list(points)
    done = set()
    out = []
    for x in remaining:
        if x in done:
            continue
        orb = orbit(gens, x, act)
        done |= orb
        out.append(orb)
    return out


@dataclass(frozen=True)
class Action:
    """A finite set with a permutation action given by ``act(g, x)``."""

    points: tuple
    act: object = _act_point

    @classmethod
    def natural(cls, n):
        return cls(tuple(range(n)), _act_point)

    @classmethod
    def diagonal(cls, n):
        return cls(tuple((i, j) for i in range(n) for j in range(n)), _act_pair)

    def fixed_count(self, g):
        return sum(1 for x in self.points if self.act(g, x) == x)


# -- Burnside-type counting ------------------------------------------------------------------


def _check_cyclic_pair(H1, H2, sigma):
    if not (H2 <= H1) or not H2.is_normal_in(H1):
        raise NotNormal("H2 must be a normal subgroup of H1")
    if sigma not in H1 or H2.coset_order(sigma) * H2.order != H1.order:
        raise NotGenerator("sigma*H2 does not generate H1/H2")


def burnside_common_orbits(H1, H2, sigma, action):
    """Number of H1-orbits that are also H2-orbits, via fixed points of the coset sigma*H2."""
    _check_cyclic_pair(H1, H2, sigma)
    total = sum(action.fixed_count(sigma * h) for h in H2.elements)
    count, rem = divmod(total, H2.order)
    if rem:
        raise ArithmeticError(f"fixed-point sum {total} not divisible by |H2| = {H2.order}")
    return count


def common_orbits_direct(H1, H2, action):
    """H1-orbits that are single H2-orbits, computed by orbit enumeration."""
    o1 = orbits_on(H1.gens, action.points, action.act)
    o2 = set(orbits_on(H2.gens, action.points, action.act))
    return [o for o in o1 if o in o2]


def generators_mod(H1, H2):
    """Elements sigma of H1 with H1 = <H2, sigma> (H2 normal, H1/H2 cyclic)."""
    index = H1.order // H2.order
    return [s for s in H1.elements if H2.coset_order(s) == index]


@dataclass(frozen=True)
class EquivReport:
    items: dict

    @property
    def agreement(self):
        return len(set(self.items.values())) <= 1

    @property
    def value(self):
        vals = set(self.items.values())
        return vals.pop() if len(vals) == 1 else None


def count_equiv(H1, H2, n):
    """The four equivalent conditions for (H1, H2) acting on {0..n-1}, evaluated independently."""
    if not H2.is_transitive() or H2.n != n:
        raise NotTransitive("H2 must act transitively")
    if not (H2 <= H1) or not H2.is_normal_in(H1):
        raise NotNormal("H2 must be a normal subgroup of H1")
    diag = frozenset((i, i) for i in range(n))
    common = common_orbits_direct(H1, H2, Action.diagonal(n))
    fixes = [s.num_fixed() for s in generators_mod(H1, H2)]
    return EquivReport(
        {
            "(1)": common == [diag],
            "(2)": all(f == 1 for f in fixes),
            "(3)": all(f <= 1 for f in fixes),
            "(4)": all(f >= 1 for f in fixes),
        }
    )


# -- exceptionality triples ---------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ExcTriple:
    n: int
    A: PermGroup
    G: PermGroup
    frob: Perm
    base: int = 0

    @cached_property
    def A1(self):
        return self.A.stabilizer(self.base)

    @cached_property
    def G1(self):
        return self.G.intersection(self.A1)

    @cached_property
    def frob_coset(self):
        """Phi = frob*G."""
        return tuple(sorted(self.frob * g for g in self.G.elements))

    @cached_property
    def frob_coset_base(self):
        """Phi_L = Phi intersected with the stabilizer of the base point."""
        return tuple(s for s in self.frob_coset if s[self.base] == self.base)

    @cached_property
    def transversal(self):
        """transversal[j] maps the base point to j (least such element)."""
        reps = {}
        for a in self.A.elements:
            reps.setdefault(a[self.base], a)
        return tuple(reps[j] for j in range(self.n))

    def to_json(self):
        return {
            "n": self.n,
            "gens_A": [list(g) for g in self.A.gens],
            "gens_G": [list(g) for g in self.G.gens],
            "frob": list(self.frob),
            "base": self.base,
        }


def make_triple(n, gens_A, gens_G, frob, base=0, cap=GROUP_CAP):
    A = close_group(n, gens_A, cap)
    G = close_group(n, gens_G, cap)
    return ExcTriple(n, A, G, check_perm(frob, n), base)


def triple_from_json(data, cap=GROUP_CAP):
    try:
        n = int(data["n"])
        base = int(data.get("base", 0))
        return make_triple(n, data["gens_A"], data["gens_G"], data["frob"], base, cap)
    except InvalidTriple:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidTriple("schema", f"malformed triple: {exc}") from exc


@dataclass(frozen=True)
class TripleDiagnostics:
    flags: dict

    @property
    def totally_ramified(self):
        return self.flags["G_transitive"]

    @property
    def first_failure(self):
        for name in STRUCTURAL_FLAGS:
            if not self.flags[name]:
                return name
        return None


STRUCTURAL_FLAGS = ("base", "frob_in_A", "G_in_A", "normal", "cyclic_quotient", "A_transitive")


def validate_triple(t, strict=True, require_totally_ramified=False):
    """Check the structural conditions on a triple.

    With ``strict`` an InvalidTriple naming the first failed structural flag
    is raised; otherwise all flags are returned. ``G_transitive`` (total
    ramification) is informational unless ``require_totally_ramified``.
    """
    flags = {"base": 0 <= t.base < t.n}
    flags["frob_in_A"] = t.frob in t.A
    flags["G_in_A"] = t.G <= t.A
    flags["normal"] = flags["G_in_A"] and t.G.is_normal_in(t.A)
    flags["cyclic_quotient"] = (
        flags["normal"] and flags["frob_in_A"] and t.G.coset_order(t.frob) * t.G.order == t.A.order
    )
    flags["A_transitive"] = t.A.is_transitive()
    flags["G_transitive"] = t.G.is_transitive()
    diag = TripleDiagnostics(flags)
    if strict:
        bad = diag.first_failure
        if bad is None and require_totally_ramified and not flags["G_transitive"]:
            bad = "G_transitive"
        if bad is not None:
            raise InvalidTriple(bad)
    return diag


def _cosets(group, sub):
    """Left cosets g*sub as frozensets."""
    return {frozenset(g * h for h in sub.elements) for g in group.elements}


def t_ram_equiv(t):
    """Total-ramification criteria, each computed on its own terms."""
    A, G, A1, G1 = t.A, t.G, t.A1, t.G1
    if not (G <= A) or not G.is_normal_in(A):
        raise NotNormal("G must be normal in A")
    # image of A1 in A/G, as a set of G-cosets
    A1_image = {frozenset(a * g for g in G.elements) for a in A1.elements}
    # image of G/G1 in A/A1, as a set of A1-cosets
    G_cosets = {frozenset(g * h for h in A1.elements) for g in G.elements}
    return EquivReport(
        {
            "(2)": A.order // A1.order == G.order // G1.order,
            "(3)": A1.order // G1.order == A.order // G.order,
            "(4)": len(A1_image) == A.order // G.order,
            "(5)": G_cosets == _cosets(A, A1),
            "(6)": G.is_transitive(),
        }
    )


NT_RAM_ITEMS = tuple(f"({i})" for i in range(2, 16))


@dataclass(frozen=True)
class NtRamReport:
    items: dict

    @property
    def agreement(self):
        return len(set(self.items.values())) == 1

    @property
    def value(self):
        return self.items["(3)"]


def _unique_common_point_orbit(t):
    common = common_orbits_direct(t.A1, t.G1, Action.natural(t.n))
    return common == [frozenset([t.base])]


def _diagonal_unique(t):
    diag = frozenset((i, i) for i in range(t.n))
    return common_orbits_direct(t.A, t.G, Action.diagonal(t.n)) == [diag]


def nt_ram_battery(t):
    """All fourteen group-level exceptionality criteria for a totally ramified triple."""
    validate_triple(t, require_totally_ramified=True)
    A, A1, G1, base = t.A, t.A1, t.G1, t.base
    phi = t.frob_coset
    phi_L = t.frob_coset_base
    phi_set = set(phi)
    phi_L_set = set(phi_L)

    # Frob(N/sigma(L)) = Phi cap sigma A1 sigma^-1; depends only on the coset sigma A1
    conj_stabs = {}
    for sigma in t.transversal:
        conj_stabs[sigma[base]] = {sigma * a * sigma.inverse() for a in A1.elements}
    item4 = all(not (phi_L_set & conj_stabs[j]) for j in conj_stabs if j != base)
    union = set()
    for stab in conj_stabs.values():
        union |= phi_set & stab
    item5 = union == phi_set

    fix_A = [s.num_fixed() for s in generators_mod(A, t.G)]
    fix_phi = [s.num_fixed() for s in phi]
    fix_A1 = [s.num_fixed() for s in generators_mod(A1, G1)]
    fix_phi_L = [s.num_fixed() for s in phi_L]

    items = {
        "(2)": _unique_common_point_orbit(t),
        "(3)": _diagonal_unique(t),
        "(4)": item4,
        "(5)": item5,
        "(6)": all(f == 1 for f in fix_A),
        "(7)": all(f <= 1 for f in fix_A),
        "(8)": all(f >= 1 for f in fix_A),
        "(9)": all(f == 1 for f in fix_phi),
        "(10)": all(f <= 1 for f in fix_phi),
        "(11)": all(f >= 1 for f in fix_phi),
        "(12)": all(f == 1 for f in fix_A1),
        "(13)": all(f <= 1 for f in fix_A1),
        "(14)": all(f == 1 for f in fix_phi_L),
        "(15)": all(f <= 1 for f in fix_phi_L),
    }
    return NtRamReport(items)


def is_exceptional_triple(t):
    """The diagonal is the only common orbit of A and G on S x S."""
    validate_triple(t, require_totally_ramified=True)
    return _diagonal_unique(t)


# -- intermediate subgroups and towers -------------------------------------------------------------


def minimal_block(gens, n, seed):
    """Smallest block of imprimitivity containing the set ``seed``."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    seed = sorted(seed)
    pending = []
    for x in seed[1:]:
        pending.append((seed[0], x))
    while pending:
        a, b = pending.pop()
        ra, rb = find(a), find(b)
        if ra == rb:
            continue
        parent[rb] = ra
        for g in gens:
            pending.append((g[a], g[b]))
    root = find(seed[0])
    return frozenset(x for x in range(n) if find(x) == root)


def blocks_containing_base(t):
    """All blocks of the A-action that contain the base point."""
    start = frozenset([t.base])
    found = {start}
    queue = [start]
    while queue:
        blk = queue.pop()
        for j in range(t.n):
            if j in blk:
                continue
            bigger = minimal_block(t.A.gens, t.n, blk | {j})
            if bigger not in found:
                found.add(bigger)
                queue.append(bigger)
    return sorted(found, key=lambda b: (len(b), sorted(b)))


def intermediate_subgroups(t, method="blocks", cap=GROUP_CAP):
    """All subgroups B with A1 <= B <= A.

    ``blocks`` reads them off the blocks containing the base point (B is the
    setwise stabiliser of its block). ``closure`` closes A1 together with
    every subset of a transversal; it is exponential in n and kept as a cross
    check for small degrees.
    """
    if t.A.order > cap:
        raise GroupTooLarge(f"|A| = {t.A.order} exceeds {cap}")
    if method == "blocks":
        out = []
        for blk in blocks_containing_base(t):
            elems = [a for a in t.A.elements if a[t.base] in blk]
            out.append(group_from_elements(t.n, elems))
        return out
    if method == "closure":
        reps = [r for r in t.transversal if r[t.base] != t.base]
        found = {}
        a1_gens = list(t.A1.gens)
        for size in range(len(reps) + 1):
            for subset in combinations(reps, size):
                B = close_group(t.n, a1_gens + list(subset), cap)
                found.setdefault(B.element_set, B)
        return sorted(found.values(), key=lambda B: (B.order, B.elements))
    raise ValueError(f"unknown method {method!r}")


def _restrict(perm, labels, index):
    return Perm(index[perm[x]] for x in labels)


def quotient_triple(t, B):
    """A acting on the cosets A/B (equivalently on the blocks of B's base block)."""
    block = frozenset(b[t.base] for b in B.elements)
    blocks = sorted(
        {frozenset(a[x] for x in block) for a in t.transversal},
        key=lambda s: (t.base not in s, min(s)),
    )
    where = {}
    for i, blk in enumerate(blocks):
        for x in blk:
            where[x] = i
    reps = [min(blk) for blk in blocks]

    def image(g):
        return Perm(where[g[r]] for r in reps)

    m = len(blocks)
    return ExcTriple(
        m,
        close_group(m, [image(g) for g in t.A.gens]),
        close_group(m, [image(g) for g in t.G.gens]),
        image(t.frob),
        0,
    )


def sub_triple(t, B):
    """B acting on B/A1, i.e. on the base block, with B cap G and a Frobenius element of B."""
    labels = sorted({b[t.base] for b in B.elements}, key=lambda x: (x != t.base, x))
    index = {x: i for i, x in enumerate(labels)}
    m = len(labels)
    BG = [g for g in t.G.elements if g in B]
    frob_B = [s for s in t.frob_coset if s in B]
    if not frob_B:
        raise InvalidTriple("frob_in_B", "Frobenius coset misses B; is G transitive?")
    return ExcTriple(
        m,
        close_group(m, [_restrict(b, labels, index) for b in B.gens]),
        close_group(m, [_restrict(g, labels, index) for g in group_from_elements(t.n, BG).gens]),
        _restrict(frob_B[0], labels, index),
        0,
    )


@dataclass(frozen=True)
class SubextReport:
    whole: bool
    upper: bool  # M/K, the quotient triple
    lower: bool  # L/M, the sub-triple
    index: int

    @property
    def holds(self):
        return self.whole == (self.upper and self.lower)


def subext_check(t, B):
    """Exceptionality of the tower K < M < L against that of its two layers."""
    if not (t.A1 <= B and B <= t.A):
        raise NotIntermediate("B must lie between A1 and A")
    validate_triple(t, require_totally_ramified=True)
    up = quotient_triple(t, B)
    low = sub_triple(t, B)
    return SubextReport(
        is_exceptional_triple(t), is_exceptional_triple(up), is_exceptional_triple(low), t.A.order // B.order
    )


def galois_obstruction(t):
    """True iff no B with A1 <= B < A is normal in A (no proper Galois subextension)."""
    validate_triple(t)
    return not any(B != t.A and B.is_normal_in(t.A) for B in intermediate_subgroups(t))


def aut_trivial(t):
    """True iff the normaliser of A1 in A is A1 itself."""
    validate_triple(t)
    A1 = t.A1
    return all(a in A1 for a in t.A.elements if all(a * h * a.inverse() in A1 for h in A1.gens))


# -- corpora -------------------------------------------------------------------------------------


def affine_triple(n, mult):
    """Z/n with G = translations and frob = multiplication by ``mult`` (a unit mod n)."""
    if n == 1:
        ident = Perm.identity(1)
        return make_triple(1, [], [], ident)
    shift = Perm((i + 1) % n for i in range(n))
    scale = Perm((mult * i) % n for i in range(n))
    return make_triple(n, [shift, scale], [shift], scale)


@lru_cache(maxsize=None)
def all_subgroups(n):
    """Every subgroup of S_n, by repeatedly joining cyclic subgroups."""
    S = symmetric_group(n)
    cyclic = {}
    for g in S.elements:
        C = close_group(n, [g])
        cyclic.setdefault(C.element_set, (C, g))
    found = {frozenset([Perm.identity(n)]): close_group(n, [])}
    for key, (C, _) in cyclic.items():
        found.setdefault(key, C)
    layer = list(found.values())
    while layer:
        nxt = []
        for H in layer:
            for key, (C, g) in cyclic.items():
                if g in H:
                    continue
                J = close_group(n, list(H.gens) + [g])
                if J.element_set not in found:
                    found[J.element_set] = J
                    nxt.append(J)
        layer = nxt
    return tuple(sorted(found.values(), key=lambda H: (H.order, H.elements)))


def transitive_groups(n):
    return [H for H in all_subgroups(n) if H.is_transitive()]


def lattice_triples(max_degree=5, totally_ramified=True):
    """Every triple (A, G, frob) with A transitive of degree <= max_degree.

    G runs over normal subgroups with cyclic quotient (transitive ones only if
    ``totally_ramified``), and frob over one representative of every
    generating coset of A/G.
    """
    out = []
    for n in range(1, max_degree + 1):
        subs = all_subgroups(n)
        for A in transitive_groups(n):
            for G in subs:
                if not (G <= A) or not G.is_normal_in(A):
                    continue
                if totally_ramified and not G.is_transitive():
                    continue
                index = A.order // G.order
                reps = {}
                for a in A.elements:
                    if G.coset_order(a) == index:
                        reps.setdefault(frozenset(a * g for g in G.elements), a)
                for frob in sorted(reps.values()):
                    out.append(ExcTriple(n, A, G, frob, 0))
    return out


def relabel(t, pi):
    """Conjugate the whole triple by the relabelling pi of S."""
    inv = pi.inverse()

    def conj(g):
        return pi * g * inv

    return ExcTriple(
        t.n,
        close_group(t.n, [conj(g) for g in t.A.gens]),
        close_group(t.n, [conj(g) for g in t.G.gens]),
        conj(t.frob),
        t.base,
    )


def all_relabellings(n):
    return [Perm(p) for p in permutations(range(n))]
