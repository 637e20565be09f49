"""Hausdorffness, topological freeness, minimality and the simplicity criterion.

Run with ``python3 demos/06_tight_groupoid_properties.py`` (about half a minute).
"""
from lcsc import (build, check_hausdorff, check_minimality, check_star_property,
                  check_topological_freeness, generate_fixture, kernel_and_tg, simplicity_condition)
from lcsc.checks import _rebuild
from lcsc.tight import precondition

# The cyclic-shift example on ℤ/3 with γ of order 3.
b = build(generate_fixture("sec6", {"N": 3, "horizon": 4, "P": 3}))
S = b.system
print(f"shift example: |Λ| = {b.cat.n}, |G| = {S.G.n}")
h = check_hausdorff(S)
print("Hausdorff:", h.status, "(fast path)" if h.data.get("fast_path") else "")
pre = precondition(S, h)
print("topologically free:", check_topological_freeness(S, pre).status)
print("minimal:", check_minimality(S, pre).status)
print("simplicity condition:", simplicity_condition(S, pre).verdict)

for g in (1, 2):
    st = check_star_property(b.cat, b.d, g)
    print(f"star property for g = {g}: {st.verdict.status}")
res = kernel_and_tg(S, [1, 2])
print("kernel pieces:", {g: len(p.keys) for g, p in res.pieces.items()}, "checks", res.report.verdict)

# A fixture whose germ groupoid is not Hausdorff: the fixed sets of s grow with the horizon.
n = build(generate_fixture("nonhausdorff-swap-fix", {"horizon": 6}))
print("\nsingle horizon:", check_hausdorff(n.system).status)
v = check_hausdorff(n.system, (4, 6, 8), _rebuild(n))
print("three horizons:", v.status)
print("  lower bounds on the number of closure pieces:", v.data["certificate"]["lower_bounds"])

# Trivial action of ℤ/2 on a single object: minimal but not topologically free.
t = build(generate_fixture("trivial", {"order": 1, "group": 2}))
v = check_topological_freeness(t.system)
print("\ntrivial action: topologically free", v.status, "witness", v.witness)
print("trivial action: minimal", check_minimality(t.system).status)
