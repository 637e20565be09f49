"""Shared bundles for the test modules (cached, since several are costly to build)."""
from __future__ import annotations

from functools import lru_cache

from lcsc import build, generate_fixture, loads
from lcsc.fixtures import commutative_n2

E2 = """lcsc 1
name e2
[objects]
u v
[morphisms]
e: u -> v
"""

E2_TRIVIAL = E2 + """[groupoid.objects]
u v
"""

C2 = """lcsc 1
name c2
[objects]
v
[morphisms]
g: v -> v
[composition]
g * g = id_v
[length]
monoid trivial
g = 0
"""

# an invertible g fixing x under left multiplication
FIXED_BY_UNIT = """lcsc 1
name fixed
[objects]
v w
[morphisms]
g: v -> v
x: w -> v
[composition]
g * g = id_v
g * x = x
"""

# x*b = x*c with b ≠ c
NOT_LEFT_CANCELLATIVE = """lcsc 1
name degenerate
[objects]
u v w
[morphisms]
x: v -> w
b: u -> v
c: u -> v
d: u -> w
[composition]
x * b = d
x * c = d
"""

# ℤ/2 acting trivially on {a}* with trivial cocycle
Z2_TRIVIAL_ON_A = ("rose-k", (("k", 1), ("horizon", 4), ("group", "z2-trivial")))

F2 = ("rose-k", (("k", 2), ("horizon", 4)))
F2_TRIVIAL = ("rose-k", (("k", 2), ("horizon", 4), ("group", "trivial")))
EP = ("exel-pardo-swap", (("horizon", 5),))
SEC6 = ("sec6", (("N", 3), ("horizon", 4), ("P", 3)))
Z2X = ("z2-central", (("horizon", 4),))
NONHAUSDORFF = ("nonhausdorff-swap-fix", (("horizon", 6),))

# fixtures small enough for exhaustive germ and filter scans
ENUMERABLE = [
    ("graph-path", (("n", 3), ("group", "trivial"))),
    ("rose-k", (("k", 2), ("horizon", 3), ("group", "trivial"))),
    ("rose-k", (("k", 1), ("horizon", 4), ("group", "z2-trivial"))),
    ("exel-pardo-swap", (("horizon", 3),)),
    ("z2-central", (("horizon", 4), ("group", "trivial"))),
    ("nonhausdorff-swap-fix", (("horizon", 3),)),
    ("trivial", (("order", 1), ("group", 2))),
    ("trivial", (("order", 2), ("group", 2))),
]


@lru_cache(maxsize=None)
def fixture(name, params=(), horizon=None):
    return build(generate_fixture(name, dict(params)), horizon=horizon)


def fx(spec, horizon=None):
    return fixture(spec[0], spec[1], horizon)


@lru_cache(maxsize=None)
def text(t):
    return loads(t)


@lru_cache(maxsize=None)
def n2(horizon=4):
    return build(commutative_n2(horizon))


def fixture_id(spec):
    name, params = spec
    return name + ("[" + ",".join(f"{k}={v}" for k, v in params) + "]" if params else "")


@lru_cache(maxsize=None)
def sec6_kernel():
    from lcsc import enumerate_filters, kernel_and_tg
    from lcsc.checks import system_of
    b = fx(SEC6)
    return kernel_and_tg(system_of(b), list(b.d.monoid.elements_up_to(3)), enumerate_filters(b.cat))
