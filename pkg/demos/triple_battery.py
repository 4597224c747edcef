"""Group-theoretic side: monodromy triples, the equivalence battery and towers.

    python3 demos/triple_battery.py
"""

from math import gcd

from excmaps.groups import (
    aut_trivial,
    galois_obstruction,
    intermediate_subgroups,
    is_exceptional_triple,
    lattice_triples,
    nt_ram_battery,
    subext_check,
)
from excmaps.laurent import coprime_battery, tame_monodromy_triple

print("tame triples (n, q): exceptional?  expected gcd(n, q-1) == 1")
for n, q in [(3, 5), (3, 7), (4, 5), (5, 9), (6, 7), (7, 11)]:
    t = tame_monodromy_triple(n, q)
    rep = nt_ram_battery(t)
    print(f"  ({n}, {q}): {rep.value!s:<5}  agree={rep.agreement}  expected={gcd(n, q - 1) == 1}")

print()
print("coprime battery for n = 7 over F_5, F_8, F_13:")
for q in (5, 8, 13):
    rep = coprime_battery(7, q)
    print(f"  q={q}: {rep.items}")

print()
t = tame_monodromy_triple(6, 5)
print(f"towers inside the degree-6 tame triple over F_5 (|A| = {t.A.order}):")
for B in intermediate_subgroups(t):
    r = subext_check(t, B)
    print(f"  |B| = {B.order:<3} index {r.index}: whole={r.whole} upper={r.upper} lower={r.lower} holds={r.holds}")

print()
triples = lattice_triples(4)
exc = [t for t in triples if is_exceptional_triple(t)]
print(f"{len(triples)} totally ramified lattice triples of degree <= 4, {len(exc)} exceptional")
print("all exceptional ones satisfy the structural implications:", all(galois_obstruction(t) and aut_trivial(t) for t in exc))
