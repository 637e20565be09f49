"""Atoms, transversals of the invertibles, and unique factorisation λ = β g.

Run with ``python3 demos/04_factorization.py``.
"""
from lcsc import build, factorize, find_atoms, generate_fixture, transversal, verify_zs_decomposition

b = build(generate_fixture("z2-central", {"horizon": 4}))
L, d = b.cat, b.d
print("morphisms:", sorted(L.name(m) for m in range(L.n)))
print("invertibles:", sorted(L.name(int(m)) for m in L.invertible_ids))
print("atoms:", sorted(L.name(m) for m in find_atoms(L, d)))

# A transversal picks one representative in each class of λ up to right multiplication by units.
B = transversal(L, d=d)
print("transversal B:", sorted(L.name(int(m)) for m in B.members))
for w in ("x", "xc", "xxc"):
    beta, g = factorize(L, B, L[w])
    print(f"  {w} = {L.name(beta)} . {L.name(g)}")

# The subcategory B* together with the units recovers Λ as a Zappa-Szép product.
rep = verify_zs_decomposition(L, d, B)
for name, verdict in rep.parts.items():
    print(f"  {name}: {verdict.status}")
