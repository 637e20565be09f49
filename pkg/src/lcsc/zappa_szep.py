"""The Zappa-Szép product Λ⋈G of a category system and its preservation checks."""
from __future__ import annotations

import itertools
from functools import cached_property

import numpy as np

from .action import CategorySystem, is_pseudo_free
from .category import (BEYOND, UNDEF, FiniteCategory, InvertibleSet, check_cancellation,
                       is_exhaustive, is_finitely_aligned)
from .errors import ValidationError
from .length import LengthAssignment, check_wfp
from .verdict import Report, from_bool


class ZSCategory:
    """Pairs (α, g) with s(α) = r(g), materialized as a FiniteCategory in ``cat``."""

    def __init__(self, sys_: CategorySystem, cat: FiniteCategory, alpha, g, index):
        self.sys = sys_
        self.cat = cat
        self.alpha = alpha
        self.g = g
        self.index = index  # dense |Λ|×|G| array of pair ids, -1 where not a pair

    @property
    def n(self):
        return self.cat.n

    def pair(self, m: int) -> tuple[int, int]:
        return int(self.alpha[m]), int(self.g[m])

    def id_of(self, alpha: int, g: int) -> int:
        m = int(self.index[alpha, g])
        if m < 0:
            raise ValidationError("not a composable pair (s(α) ≠ r(g))")
        return m

    def __getitem__(self, key):
        if isinstance(key, str):
            return self.cat[key]
        a, g = key
        Lc, G = self.sys.cat, self.sys.G
        a = Lc[a] if isinstance(a, str) else a
        g = G[g] if isinstance(g, str) else g
        return self.id_of(a, g)

    def compose(self, x: int, y: int) -> int:
        return self.cat.compose(x, y)

    def __repr__(self):
        return f"ZSCategory({self.cat.label!r}, {self.n} morphisms)"

    @cached_property
    def unit_pairs(self) -> np.ndarray:
        """Ids of (α, s(α))."""
        G, A = self.sys.G, self.sys.action
        sid = G.ids[[A.object_unit[int(o)] for o in self.sys.cat.s]]
        return self.index[np.arange(self.sys.cat.n), sid]


def build_product(sys_: CategorySystem, verify: bool = False) -> ZSCategory:
    """Materialize Λ⋈G with (α,g)(β,h) = (α(g·β), φ̂(g,β)h)."""
    if not sys_.validation.holds:
        bad = sys_.validation.failures()
        raise ValidationError(f"category system fails {', '.join(bad)}",
                              next(iter(bad.values())).witness if bad else ())
    L, G, A = sys_.cat, sys_.G, sys_.action
    uo = A.unit_object
    pa, pg = np.nonzero(L.s[:, None] == uo[G.r][None, :])
    n = len(pa)
    index = np.full((L.n, G.n), -1, dtype=np.int64)
    index[pa, pg] = np.arange(n)
    src_obj = uo[G.s[pg]]
    rng_obj = L.r[pa]

    comp = np.full((n, n), UNDEF, dtype=np.int32)
    for i in range(n):
        js = np.flatnonzero(L.r[pa] == src_obj[i])
        if not len(js):
            continue
        g, a = pg[i], pa[i]
        gb = A.act[g, pa[js]]
        na = L.comp[a, gb]
        c = A.coc[g, pa[js]]
        ng = G.comp[c, pg[js]]
        res = np.where(na >= 0, index[np.maximum(na, 0), np.maximum(ng, 0)], BEYOND)
        if ((na >= 0) & ((ng < 0) | (res < 0))).any():
            raise ValidationError("product composition leaves the pair set", (i,))
        comp[i, js] = res
    names = [f"({L.name(a)},{G.name(g)})" for a, g in zip(pa.tolist(), pg.tolist())]
    ids = index[L.ids, G.ids[[A.object_unit[o] for o in range(len(L.objects))]]]
    cat = FiniteCategory.from_table(
        L.objects, names, src_obj, rng_obj, ids, comp,
        horizon=L.horizon, label=f"{L.label}⋈{G.label}" if L.label else "product",
    )
    p = ZSCategory(sys_, cat, pa, pg, index)
    if verify:
        from .category import validate_category
        rep = validate_category(cat)
        if rep.fails:
            raise ValidationError("product is not associative", rep["associativity"].witness)
    return p


def zs_invertibles(p: ZSCategory) -> InvertibleSet:
    """{(f,h): f ∈ Λ⁻¹} with (f,h)⁻¹ = (h⁻¹·f⁻¹, φ̂(h, h⁻¹·f⁻¹)⁻¹)."""
    L, G, A = p.sys.cat, p.sys.G, p.sys.action
    inv = {}
    for m in range(p.n):
        f, h = p.pair(m)
        if not L.is_invertible(f):
            continue
        hi = int(G.inverse[h])
        x = int(A.act[hi, int(L.inverse[f])])
        k = int(G.inverse[int(A.coc[h, x])])
        inv[m] = p.id_of(x, k)
    return InvertibleSet(frozenset(inv), inv)


def product_length(sys_: CategorySystem, p: ZSCategory) -> LengthAssignment:
    """d(α, g) = d(α)."""
    d = sys_.d
    if d is None:
        raise ValidationError("the system has no length function")
    return LengthAssignment(p.cat, d.monoid, [d(int(a)) for a in p.alpha])


def check_preservation(sys_: CategorySystem, p: ZSCategory, exhaustive_limit: int = 10,
                       sample: int = 64, seed: int = 0) -> Report:
    """Compare the transfer results with brute-force scans of the product."""
    L = sys_.cat
    P = p.cat
    rep = Report("preservation", truncated=L.truncated)
    pc = check_cancellation(P)
    lc = check_cancellation(L)
    ok = pc["left"].holds or not lc["left"].holds
    rep.add("left-cancellative", from_bool(ok, pc["left"].witness, L.truncated,
                                           product=pc["left"].holds, base=lc["left"].holds))

    theory = zs_invertibles(p)
    brute = {int(m): int(P.inverse[m]) for m in P.invertible_ids}
    same = set(theory.members) == set(brute) and all(theory.inverse[m] == brute[m] for m in brute)
    diff = sorted(set(theory.members) ^ set(brute))
    rep.add("invertibles", from_bool(same, diff[:1]))

    # the ideal of (α,g) is the set of pairs over αΛ; this gives the intersection identity
    expected = L.ideal_mask[p.alpha][:, p.alpha]
    wrong = np.argwhere(P.ideal_mask != expected)
    rep.add("ideals", from_bool(len(wrong) == 0, tuple(map(int, wrong[0])) if len(wrong) else (),
                                L.truncated))
    if P.n <= 200:
        bad = ()
        for i in range(P.n):
            both = P.ideal_mask[i] & P.ideal_mask
            want = (L.ideal_mask[p.alpha[i]] & L.ideal_mask[p.alpha])[:, p.alpha]
            rows = np.flatnonzero((both != want).any(axis=1))
            if len(rows):
                bad = (i, int(rows[0]))
                break
        rep.add("intersections", from_bool(not bad, bad, L.truncated))

    la, pa_ = is_finitely_aligned(L), is_finitely_aligned(P)
    agree = (la.holds == pa_.holds) and (la.data.get("singly_aligned") == pa_.data.get("singly_aligned"))
    rep.add("alignment", from_bool(agree, (), L.truncated,
                                   singly_aligned=pa_.data.get("singly_aligned")))

    rng = np.random.default_rng(seed)
    bad = ()
    for v in range(len(L.objects)):
        unit = P.identity(v)
        vP = P.with_range[v].tolist()
        if len(vP) <= exhaustive_limit:
            subsets = itertools.chain.from_iterable(
                itertools.combinations(vP, k) for k in range(1, len(vP) + 1))
        else:
            subsets = (tuple(rng.choice(vP, size=int(rng.integers(1, min(len(vP), 6) + 1)), replace=False))
                       for _ in range(sample))
        targets = [unit] + [int(x) for x in vP[:exhaustive_limit]]
        for F in subsets:
            H = sorted({int(p.alpha[x]) for x in F})
            for t in targets:
                a = int(p.alpha[t])
                if is_exhaustive(P, F, t) != is_exhaustive(L, H, a):
                    bad = (t,) + tuple(int(x) for x in F)
                    break
            if bad:
                break
        if bad:
            break
    rep.add("exhaustive-sets", from_bool(not bad, bad, L.truncated))

    if sys_.d is not None and check_wfp(L, sys_.d).holds:
        pf = is_pseudo_free(sys_)
        rc = pc["right"].holds
        rep.add("right-cancellative", from_bool(pf.holds == rc, pf.witness or pc["right"].witness,
                                                L.truncated, pseudo_free=pf.holds, right_cancellative=rc))
    rep.data["right_cancellative"] = pc["right"].holds
    rep.data["right_witness"] = pc["right"].witness
    return rep
