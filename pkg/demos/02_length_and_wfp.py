"""Length functors into ordered monoids and the weak finite property (WFP).

Run with ``python3 demos/02_length_and_wfp.py``.
"""
from lcsc import build, check_wfp, generate_fixture, is_action_free
from lcsc.fixtures import commutative_n2, numerical_25
from lcsc.monoid import NaturalPowers, NumericalMonoid

# Ordered monoids: ℕ^2 has coordinatewise joins, while ⟨2,5⟩ ⊂ ℕ lacks some of them.
M = NaturalPowers(2)
print("join in N^2 of (1,0) and (0,2):", M.join((1, 0), (0, 2)))
N = NumericalMonoid([2, 5])
print("2 <= 7 in <2,5>:", N.leq(2, 7), "   2 <= 3:", 3 in N and N.leq(2, 3))

# The free monoid with word length satisfies WFP.
free = build(generate_fixture("rose-k", {"k": 2, "horizon": 4}))
print("\nfree monoid, length = word length")
print("  WFP:", check_wfp(free.cat, free.d).holds)
print("  action free:", is_action_free(free.cat).holds)

# ℕ^2 as a category with the total-degree length into ℕ.
for mode in ("total", "vector"):
    b = build(commutative_n2(horizon=4, length=mode))
    v = check_wfp(b.cat, b.d)
    print(f"commutative N^2 with {mode} length: WFP {v.status}")
    if v.fails:
        print("  witness:", v.witness)

# A numerical monoid category: lengths live in ⟨2,5⟩.
b = build(numerical_25(12))
print("\nlengths in <2,5>, WFP:", check_wfp(b.cat, b.d).status)
