"""Laurent series: roots of 1-units and tame uniformizers.

    python3 demos/series_roots.py
"""

from excmaps.laurent import (
    eisenstein_normalize,
    format_series,
    nth_root_one_unit,
    parse_series,
    roots_of_unity_constant,
    tame_uniformizer,
)

u = parse_series("1+t over GF(3) prec 12")
v = nth_root_one_unit(u, 2)
print("sqrt(1+t) over F_3:", format_series(v))
print("squared back:      ", format_series(v * v))

# z = 2x^3 + x^4 over F_5 has valuation 3; normalize and take the tame uniformizer
z = parse_series("2*t^3+t^4 over GF(5) prec 16")
rel = eisenstein_normalize(z, 3)
y = tame_uniformizer(rel, 5)
print()
print("normalized relation:", format_series(rel.series), "scalar", rel.scalar)
print("uniformizer y:      ", format_series(y))
print("y^3:                ", format_series(y**3))

# mixed tame/wild split n = 6 = 3 * 2 over F_2
z = parse_series("t^6+t^7+t^9 over GF(2) prec 16")
y = tame_uniformizer(eisenstein_normalize(z, 6), 2)
print()
print("n=6 over F_2, y =", format_series(y), " valuation", y.valuation)

print()
for r, F_text in [(4, "1 over GF(5)"), (3, "1 over GF(5)"), (4, "1 over GF(9)")]:
    F = parse_series(F_text).field
    roots = roots_of_unity_constant(r, F, precision=4)
    print(f"{r}-th roots of unity in F_{F.q}: {len(roots)}")
