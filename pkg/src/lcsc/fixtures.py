"""Deterministic example descriptions and random small category systems."""
from __future__ import annotations

import string

import numpy as np

from .description import CategoryDescription, CategorySpec
from .errors import BadParams, LcscError

FIXTURES = ("graph-path", "rose-k", "sec6", "exel-pardo-swap", "z2-central",
            "nonhausdorff-swap-fix", "trivial")


def _int(params, key, default, lo=None, hi=None):
    raw = params.get(key, default)
    try:
        v = int(raw)
    except (TypeError, ValueError):
        raise BadParams(f"parameter {key} must be an integer, got {raw!r}") from None
    if (lo is not None and v < lo) or (hi is not None and v > hi):
        raise BadParams(f"parameter {key}={v} out of range [{lo}, {hi}]")
    return v


def _choice(params, key, default, options):
    v = str(params.get(key, default))
    if v not in options:
        raise BadParams(f"parameter {key} must be one of {', '.join(options)}")
    return v


def _check_keys(params, allowed):
    extra = sorted(set(params) - set(allowed))
    if extra:
        raise BadParams(f"unknown parameter {extra[0]!r} (expected {', '.join(allowed) or 'none'})")


def _unit_groupoid(objects) -> CategorySpec:
    return CategorySpec(objects=list(objects))


def _cyclic_group(obj, n, name="s") -> CategorySpec:
    spec = CategorySpec(objects=[obj])
    if n > 1:
        spec.generators.append((name, obj, obj, name.upper()))
        spec.relations.append(((name,) * n, ()))
    return spec


def graph_path(params) -> CategoryDescription:
    """A path graph; n=1 is the single edge e: u → v."""
    _check_keys(params, ("n", "group"))
    n = _int(params, "n", 1, 1, 50)
    group = _choice(params, "group", "trivial", ("trivial", "none"))
    objs = ["u", "v"] if n == 1 else [f"x{i}" for i in range(n + 1)]
    gens = [("e", "u", "v", None)] if n == 1 else [(f"e{i + 1}", f"x{i}", f"x{i + 1}", None) for i in range(n)]
    desc = CategoryDescription(name="graph-path", params={"n": str(n), "group": group},
                               category=CategorySpec(objects=objs, generators=gens),
                               monoid=("nat", "1"), lengths=[(g[0], ("1",)) for g in gens])
    if group == "trivial":
        desc.groupoid = _unit_groupoid(objs)
    return desc


def rose_k(params) -> CategoryDescription:
    """k loops at one object: the free monoid, or ℕ^k with commute=1."""
    _check_keys(params, ("k", "horizon", "group", "commute", "length"))
    k = _int(params, "k", 2, 1, 26)
    h = _int(params, "horizon", 4, 0, 64)
    group = _choice(params, "group", "trivial", ("trivial", "none", "z2-trivial"))
    commute = _int(params, "commute", 0, 0, 1)
    length = _choice(params, "length", "total", ("total", "vector"))
    letters = list(string.ascii_lowercase[:k])
    p = {"k": str(k), "horizon": str(h), "group": group}
    if commute:
        p["commute"] = "1"
        p["length"] = length
    spec = CategorySpec(horizon=h, objects=["v"], generators=[(x, "v", "v", None) for x in letters])
    if commute:
        for i in range(k):
            for j in range(i + 1, k):
                spec.relations.append(((letters[j], letters[i]), (letters[i], letters[j])))
    if commute and length == "vector":
        monoid = ("nat", str(k))
        lengths = [(x, tuple("1" if j == i else "0" for j in range(k))) for i, x in enumerate(letters)]
    else:
        monoid = ("nat", "1")
        lengths = [(x, ("1",)) for x in letters]
    desc = CategoryDescription(name="rose-k", params=p, category=spec, monoid=monoid, lengths=lengths)
    if group == "trivial":
        desc.groupoid = _unit_groupoid(["v"])
    elif group == "z2-trivial":
        desc.groupoid = _cyclic_group("v", 2)
        for x in letters:
            desc.action.append(("s", x, (x,)))
            desc.cocycle.append(("s", x, ("id_v",)))
    return desc


def sec6(params) -> CategoryDescription:
    """Cyclic chain: α_i: v_i → v_{i+1}, invertible loops γ_i of order P, and shifts g_i: v_i → v_{i-1}."""
    _check_keys(params, ("N", "horizon", "P"))
    N = _int(params, "N", 3, 2, 12)
    h = _int(params, "horizon", 4, 0, 12)
    P = _int(params, "P", 3, 1, 12)
    objs = [f"v{i}" for i in range(N)]
    gens = []
    for i in range(N):
        gens.append((f"a{i}", f"v{i}", f"v{(i + 1) % N}", None))
        gens.append((f"c{i}", f"v{i}", f"v{i}", f"C{i}"))
    rels = [((f"c{i}",) * P, ()) for i in range(N)]
    lengths = []
    for i in range(N):
        lengths += [(f"a{i}", ("1",)), (f"c{i}", ("0",))]
    G = CategorySpec(objects=list(objs),
                     generators=[(f"g{i}", f"v{i}", f"v{(i - 1) % N}", f"G{i}") for i in range(N)],
                     relations=[(tuple(f"g{(j + t) % N}" for t in range(N)), ()) for j in range(N)])
    desc = CategoryDescription(
        name="sec6", params={"N": str(N), "horizon": str(h), "P": str(P)},
        category=CategorySpec(horizon=h, objects=objs, generators=gens, relations=rels),
        monoid=("nat", "1"), lengths=lengths, groupoid=G)
    for i in range(N):
        g, prev = f"g{i}", (i - 1) % N
        desc.action += [(g, f"a{prev}", (f"a{(i - 2) % N}",)),
                        (g, f"c{i}", (f"c{prev}",)),
                        (g, f"C{i}", (f"C{prev}",))]
        desc.cocycle += [(g, f"a{prev}", (f"g{prev}",)),
                         (g, f"c{i}", (g,)),
                         (g, f"C{i}", (g,))]
    return desc


def exel_pardo_swap(params) -> CategoryDescription:
    """ℤ/2 swapping the two letters of the free monoid, cocycle constantly the swap."""
    _check_keys(params, ("horizon",))
    h = _int(params, "horizon", 5, 0, 16)
    desc = CategoryDescription(
        name="exel-pardo-swap", params={"horizon": str(h)},
        category=CategorySpec(horizon=h, objects=["v"], generators=[("a", "v", "v", None), ("b", "v", "v", None)]),
        monoid=("nat", "1"), lengths=[("a", ("1",)), ("b", ("1",))],
        groupoid=_cyclic_group("v", 2))
    desc.action = [("s", "a", ("b",)), ("s", "b", ("a",))]
    desc.cocycle = [("s", "a", ("s",)), ("s", "b", ("s",))]
    return desc


def z2_central(params) -> CategoryDescription:
    """{x}* with a central involution c: normal forms x^n c^ε."""
    _check_keys(params, ("horizon", "group"))
    h = _int(params, "horizon", 4, 0, 32)
    group = _choice(params, "group", "none", ("none", "trivial"))
    spec = CategorySpec(horizon=h, objects=["v"],
                        generators=[("x", "v", "v", None), ("c", "v", "v", "C")],
                        relations=[(("c", "c"), ()), (("c", "x"), ("x", "c"))])
    desc = CategoryDescription(name="z2-central", params={"horizon": str(h), "group": group},
                               category=spec, monoid=("nat", "1"),
                               lengths=[("x", ("1",)), ("c", ("0",))])
    if group == "trivial":
        desc.groupoid = _unit_groupoid(["v"])
    return desc


def nonhausdorff_swap_fix(params) -> CategoryDescription:
    """ℤ/2 fixing every word; the cocycle is the swap after a and trivial after b."""
    _check_keys(params, ("horizon",))
    h = _int(params, "horizon", 6, 0, 16)
    desc = CategoryDescription(
        name="nonhausdorff-swap-fix", params={"horizon": str(h)},
        category=CategorySpec(horizon=h, objects=["v"], generators=[("a", "v", "v", None), ("b", "v", "v", None)]),
        monoid=("nat", "1"), lengths=[("a", ("1",)), ("b", ("1",))],
        groupoid=_cyclic_group("v", 2))
    desc.action = [("s", "a", ("a",)), ("s", "b", ("b",))]
    desc.cocycle = [("s", "a", ("s",)), ("s", "b", ("id_v",))]
    return desc


def trivial(params) -> CategoryDescription:
    """One object; Λ cyclic of the given order (1 = identity only), ℤ/n acting trivially."""
    _check_keys(params, ("order", "group"))
    order = _int(params, "order", 1, 1, 12)
    n = _int(params, "group", 1, 1, 12)
    spec = CategorySpec(objects=["v"])
    if order > 1:
        spec.generators.append(("c", "v", "v", "C"))
        spec.relations.append((("c",) * order, ()))
    desc = CategoryDescription(name="trivial", params={"order": str(order), "group": str(n)},
                               category=spec, monoid=("trivial",),
                               lengths=[("c", ("0",))] if order > 1 else [],
                               groupoid=_cyclic_group("v", n))
    if order > 1 and n > 1:
        desc.action = [("s", "c", ("c",)), ("s", "C", ("C",))]
        desc.cocycle = [("s", "c", ("s",)), ("s", "C", ("s",))]
    return desc


_BUILDERS = {
    "graph-path": graph_path,
    "rose-k": rose_k,
    "sec6": sec6,
    "exel-pardo-swap": exel_pardo_swap,
    "z2-central": z2_central,
    "nonhausdorff-swap-fix": nonhausdorff_swap_fix,
    "trivial": trivial,
}


def generate_fixture(name: str, params: dict | None = None) -> CategoryDescription:
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise BadParams(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}") from None
    return builder(dict(params or {}))


def numerical_25(horizon: int = 12) -> CategoryDescription:
    """One object, atoms p (length 2) and q (length 5) with pq = qp and p⁵ = q², lengths in ⟨2,5⟩."""
    spec = CategorySpec(horizon=horizon, objects=["v"],
                        generators=[("p", "v", "v", None), ("q", "v", "v", None)],
                        relations=[(("q", "p"), ("p", "q")), (("p",) * 5, ("q", "q"))])
    return CategoryDescription(name="numerical-25", params={"horizon": str(horizon)}, category=spec,
                               monoid=("numerical", "2", "5"), lengths=[("p", ("2",)), ("q", ("5",))])


def commutative_n2(horizon: int = 4, length: str = "total") -> CategoryDescription:
    return rose_k({"k": 2, "horizon": horizon, "commute": 1, "length": length, "group": "none"})


# -- random systems -----------------------------------------------------------------

def random_description(seed: int, max_morphisms: int = 12, max_order: int = 3) -> CategoryDescription:
    """A random path category (optionally with an involution loop) and a group bundle acting on it.

    Groups are cyclic of order ≤ max_order at each object; each generator t_v
    permutes parallel edges into v and carries a random cocycle label.  The
    result may fail validation; see :func:`random_system`.
    """
    rng = np.random.default_rng(seed)
    while True:
        k = int(rng.integers(1, 4))
        objs = [f"o{i}" for i in range(k)]
        edges = []
        for i in range(k):
            for j in range(i + 1, k):
                for _ in range(int(rng.integers(0, 3))):
                    edges.append((f"e{len(edges)}", objs[i], objs[j]))
        loop = objs[int(rng.integers(0, k))] if rng.random() < 0.4 else None
        gens = [(n, s, r, None) for n, s, r in edges]
        rels = []
        if loop is not None:
            gens.append(("c", loop, loop, "C"))
            rels.append((("c", "c"), ()))
        spec = CategorySpec(objects=objs, generators=gens, relations=rels)
        desc = CategoryDescription(name=f"random-{seed}", params={"seed": str(seed)}, category=spec,
                                   monoid=("nat", "1"),
                                   lengths=[(n, ("1",)) for n, *_ in edges] + ([("c", ("0",))] if loop else []))
        try:
            from .bundle import build_category
            from .monoid import Naturals
            cat, _ = build_category(spec, Naturals(), desc.lengths, cap=max_morphisms)
        except LcscError:
            continue
        if cat.n > max_morphisms:
            continue
        break

    orders = {o: int(rng.integers(1, max_order + 1)) for o in objs}
    G = CategorySpec(objects=list(objs))
    for o in objs:
        if orders[o] > 1:
            t = f"t{o[1:]}"
            G.generators.append((t, o, o, t.upper()))
            G.relations.append(((t,) * orders[o], ()))
    desc.groupoid = G
    for o in objs:
        if orders[o] == 1:
            continue
        t = f"t{o[1:]}"
        into = [e for e in edges if e[2] == o]
        # a cyclic shift of parallel edges; invalid orders are rejected later
        by_src: dict = {}
        for e in into:
            by_src.setdefault(e[1], []).append(e[0])
        for src, names in by_src.items():
            perm = list(names)
            if len(perm) > 1 and rng.random() < 0.6:
                perm = perm[1:] + perm[:1]
            labels = [int(rng.integers(0, orders[src])) for _ in names]
            for x, y, lab in zip(names, perm, labels):
                desc.action.append((t, x, (y,)))
                sname = f"t{src[1:]}"
                if lab == 0 or orders[src] == 1:
                    desc.cocycle.append((t, x, (f"id_{src}",)))
                else:
                    desc.cocycle.append((t, x, (sname,) * lab))
        if loop == o:
            lab = 0 if rng.random() < 0.5 else 1
            desc.action.append((t, "c", ("c",)))
            desc.action.append((t, "C", ("C",)))
            val = (t,) if lab else (f"id_{o}",)
            desc.cocycle.append((t, "c", val))
            desc.cocycle.append((t, "C", val))
    return desc


def random_system(seed: int, max_morphisms: int = 12, max_order: int = 3, tries: int = 200):
    """The first random description derived from ``seed`` that validates; returns (description, bundle)."""
    from .bundle import build
    for attempt in range(tries):
        desc = random_description(seed * 1000 + attempt, max_morphisms, max_order)
        try:
            b = build(desc, strict=False)
        except LcscError:
            continue
        if b.system is not None and b.certificates["cocycle"].holds:
            return desc, b
    raise BadParams(f"no valid random system found for seed {seed}")
