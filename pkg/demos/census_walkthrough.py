"""Decide exceptionality for a few maps, then run a small census.

    python3 demos/census_walkthrough.py
"""

from excmaps.algebra.parse import format_map, parse_ratfunc
from excmaps.exceptionality import carlitz_wan_scan, check_gcw, is_exceptional


def show(text):
    f = parse_ratfunc(text)
    v = is_exceptional(f)
    line = f"{format_map(f):<22} {v.kind:<16} scanned k={list(v.scanned_k)}"
    if v.kind == "exceptional":
        line += f" witness k={v.witness_k}"
    elif v.kind == "not_exceptional":
        c = v.collision
        line += f" collision {c.a} ~ {c.b} over degree {c.k}"
    print(line)


for text in ["x^3 over GF(5)", "x^3 over GF(7)", "x^3+x over GF(3)", "x^2 over GF(3)", "(x^2+1)/x over GF(5)"]:
    show(text)

# a bijection-at-one-level map is not necessarily exceptional; the gcd test on
# ramification indices catches the obvious obstructions
print()
rep = check_gcw(parse_ratfunc("x^5 over GF(7)"))
print("x^5 over GF(7) ramification:", [(str(P), e) for P, e in rep.profile if e > 1], "passed:", rep.passed)

print()
for q, n in [(2, 3), (3, 3), (4, 3), (5, 3), (8, 3)]:
    rep = carlitz_wan_scan(q, n)
    finds = [format_map(r.f) for r in rep.exceptional]
    print(f"q={q} n={n}: {len(finds)} of {rep.total} normalized candidates exceptional", finds[:4])
