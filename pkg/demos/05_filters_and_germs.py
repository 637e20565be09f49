"""Filters on the category, the inverse-semigroup elements (α, g)\\(β, 1), and their germs.

Run with ``python3 demos/05_filters_and_germs.py``.
"""
from lcsc import (act_on_filter, build, compose_germs, degree_cocycle, element, enumerate_filters,
                  generate_fixture, germ, germ_equal, loads, principal, tight_germs)
from lcsc.checks import system_of
from lcsc.germs import check_germ_groupoid, germ_range

E2 = """lcsc 1
[objects]
u v
[morphisms]
e: u -> v
"""
cat = loads(E2).cat
fs = enumerate_filters(cat)
show = lambda fam: sorted(sorted(F.names(cat)) for F in fam)
print("filters:", show(fs.star))
print("tight filters:", show(fs.tight))

# e\id_u sends filters at u to filters at v.
s = element(cat, cat["e"], cat["id_u"])
print("(e)\\(id_u) acting on {id_u}:", sorted(act_on_filter(cat, s, principal(cat, cat["id_u"])).names(cat)))

# Germs on the free monoid: two elements agree on a neighbourhood of a filter.
b = build(generate_fixture("rose-k", {"k": 2, "horizon": 4}))
F2 = b.cat
F = principal(F2, F2["abab"])
x = germ(F2, element(F2, F2["b"], F2["a"]), F)
y = germ(F2, element(F2, F2["bb"], F2["ab"]), F)
print("\n[b\\a, abab] == [bb\\ab, abab]:", germ_equal(F2, x, y))
z = germ(F2, element(F2, F2["a"], F2["b"]), germ_range(F2, x))
print("composite returns to the unit germ:", germ_equal(F2, compose_germs(F2, z, x), germ(F2, element(F2, F2["id_v"], F2["id_v"]), F)))

S = system_of(b)
print("degree of [ab\\a, aa]:", degree_cocycle(S, germ(S, element(S, F2["ab"], F2["a"]), principal(F2, F2["aa"]))))

# The full groupoid of tight germs on a small fixture, with its axioms checked.
small = system_of(build(generate_fixture("exel-pardo-swap", {"horizon": 3})))
gg = tight_germs(small)
rep = check_germ_groupoid(small, gg)
print(f"\nswap fixture at horizon 3: {gg.n} tight germs, groupoid axioms {rep.verdict}")
