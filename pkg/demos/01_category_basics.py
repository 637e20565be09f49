"""Building a small category from a text description and querying its order structure.

Run with ``python3 demos/01_category_basics.py``.
"""
from lcsc import (check_cancellation, equivalent, initial_segments, is_finitely_aligned, loads,
                  minimal_common_extensions)

# A single arrow e: u -> v.  Composites and identities are filled in automatically.
TEXT = """lcsc 1
name one-arrow
[objects]
u v
[morphisms]
e: u -> v
"""

b = loads(TEXT)
cat = b.cat
print("morphisms:", [cat.name(m) for m in range(cat.n)])

# Left and right cancellation are checked from the composition table.
rep = check_cancellation(cat)
print("left cancellative:", rep["left"].holds, " right cancellative:", rep["right"].holds)

# The preorder a <= c means c lies in the right ideal a.Λ.
e, idv = cat["e"], cat["id_v"]
print("id_v <= e:", cat.leq(idv, e), "  e <= id_v:", cat.leq(e, idv))
print("e equivalent to id_v:", equivalent(cat, e, idv))
print("initial segments of e:", sorted(cat.name(m) for m in initial_segments(cat, e)))

# Minimal common extensions: here the only common upper bound of id_v and e is e itself.
print("mce(id_v, e):", [cat.name(m) for m in minimal_common_extensions(cat, idv, e)])
print("finitely aligned:", is_finitely_aligned(cat).holds)

# A free monoid on two letters, truncated at word length 3.
from lcsc import build, generate_fixture  # noqa: E402

free = build(generate_fixture("rose-k", {"k": 2, "horizon": 3})).cat
print(f"\nfree monoid up to length 3: {free.n} words, truncated={free.truncated}")
ab, abb = free["ab"], free["abb"]
print("ab <= abb:", free.leq(ab, abb), "   a meets b:", free.meets(free["a"], free["b"]))
