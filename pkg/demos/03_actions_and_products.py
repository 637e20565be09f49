"""Groupoid actions with cocycles, pseudo-freeness, and the Zappa-Szép product.

Run with ``python3 demos/03_actions_and_products.py``.
"""
from lcsc import (build, build_product, check_preservation, generate_fixture, is_pseudo_free,
                  validate_category_cocycle, zs_invertibles)

# ℤ/2 swapping the letters a, b of the free monoid, with a cocycle that records the swap.
b = build(generate_fixture("exel-pardo-swap", {"horizon": 3}))
S = b.system
L, G, A = S.cat, S.G, S.action

rep = validate_category_cocycle(S)
print("category cocycle valid:", rep.holds)
for name in ("action", "axiom1", "axiom5", "cocycle-identity"):
    print(f"  {name}: {rep[name].status}")

g = next(k for k in range(G.n) if not G.is_identity(k))
for w in ("a", "ab", "bba"):
    m = L[w]
    print(f"  {G.name(g)} . {w} = {L.name(int(A.act[g, m]))}, cocycle {G.name(int(A.coc[g, m]))}")

print("pseudo-free:", is_pseudo_free(S).holds)

# The product category consists of pairs (α, g) with s(α) = r(g).
P = build_product(S)
print(f"\nZappa-Szép product: {P.n} morphisms from |Λ| = {L.n}, |G| = {G.n}")
print("invertibles of the product:", len(zs_invertibles(P).members))

pres = check_preservation(S, P)
for name, verdict in pres.parts.items():
    print(f"  {name}: {verdict.status}")

# The trivial ℤ/2 action on {a}* is not pseudo-free: g.a = a and φ(g,a) = g while g is not a unit.
t = build(generate_fixture("rose-k", {"k": 1, "horizon": 4, "group": "z2-trivial"}))
v = is_pseudo_free(t.system)
print("\ntrivial action on {a}*: pseudo-free", v.status, "witness", v.witness)
