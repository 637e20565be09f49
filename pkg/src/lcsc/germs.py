"""Elements α\\β of the inverse semigroup, germs over filters, and the germ groupoid.

Everything is phrased for a category system; a bare category is treated as
the system with the trivial groupoid of units.  An element is stored in the
normal form (α, g)\\(β, 1): the groupoid part of the bottom is a unit.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .action import CategorySystem, trivial_system
from .category import FiniteCategory
from .errors import BeyondHorizon, DomainError, NotComposable
from .filters import Filter, FilterSets, enumerate_filters, principal
from .verdict import Report, from_bool


def as_system(x) -> CategorySystem:
    if isinstance(x, CategorySystem):
        return x
    if isinstance(x, FiniteCategory):
        cached = getattr(x, "_trivial_system", None)
        if cached is None:
            cached = trivial_system(x, None)
            x._trivial_system = cached
        return cached
    raise TypeError("expected a CategorySystem or FiniteCategory")


@dataclass(frozen=True)
class SElement:
    """(alpha, g)\\(beta, 1) with s(beta) = s(g) and r(g) = s(alpha)."""

    alpha: int
    g: int
    beta: int

    def describe(self, sys_) -> str:
        S = as_system(sys_)
        L, G = S.cat, S.G
        if G.n == len(G.objects):
            return f"{L.name(self.alpha)}\\{L.name(self.beta)}"
        return f"({L.name(self.alpha)},{G.name(self.g)})\\({L.name(self.beta)},1)"


@dataclass(frozen=True)
class Germ:
    elem: SElement
    filter: Filter


def _unit(S: CategorySystem, obj: int) -> int:
    return S.action.g_unit_at(int(obj))


def element(sys_, alpha, beta, g=None, f=None) -> SElement:
    """(α,g)\\(β,f) rewritten as (α, g f⁻¹)\\(β, 1)."""
    S = as_system(sys_)
    L, G = S.cat, S.G
    alpha = L[alpha] if isinstance(alpha, str) else int(alpha)
    beta = L[beta] if isinstance(beta, str) else int(beta)
    if g is None:
        g = _unit(S, L.src(beta))
    g = G[g] if isinstance(g, str) else int(g)
    if f is not None:
        f = G[f] if isinstance(f, str) else int(f)
        g = G.compose(g, int(G.inverse[f]))
    uo = S.action.unit_object
    if uo[G.src(g)] != L.src(beta) or uo[G.rng(g)] != L.src(alpha):
        raise DomainError("need s(β) = s(g) and r(g) = s(α)")
    return SElement(alpha, g, beta)


def restrict(sys_, s: SElement, gamma: int) -> tuple[int, int]:
    """(X, h) with s·(γ\\γ) = (X, h)\\(γ, 1), for β ≤ γ."""
    S = as_system(sys_)
    L = S.cat
    mu = int(L.div[s.beta, gamma])
    if mu < 0:
        raise DomainError(f"{L.name(s.beta)} is not an initial segment of {L.name(gamma)}")
    gm = int(S.act[s.g, mu])
    if gm < 0:
        raise BeyondHorizon("action beyond the horizon")
    X = int(L.comp[s.alpha, gm])
    if X < 0:
        raise BeyondHorizon(f"{L.name(s.alpha)}∘{L.name(gm)} exceeds the horizon")
    return X, int(S.coc[s.g, mu])


def act_on_filter(sys_, s: SElement, F: Filter) -> Filter:
    """s·F, the filter generated by α(g·σ^β(γ)) for γ the top of F."""
    S = as_system(sys_)
    if s.beta not in F:
        raise DomainError(f"{S.cat.name(s.beta)} is not in the filter")
    X, _ = restrict(S, s, F.top)
    return principal(S.cat, X)


def germ(sys_, s: SElement, F: Filter) -> Germ:
    if s.beta not in F:
        raise DomainError("the bottom of the element is not in the filter")
    return Germ(s, F)


def germ_key(sys_, x: Germ) -> tuple[int, int, int]:
    """(top of filter, X, h): the restriction of the element to the top of its filter."""
    X, h = restrict(sys_, x.elem, x.filter.top)
    return x.filter.top, X, h


def germ_equal(sys_, x: Germ, y: Germ) -> bool:
    if x.filter != y.filter:
        return False
    S = as_system(sys_)
    try:
        return germ_key(S, x) == germ_key(S, y)
    except BeyondHorizon:
        pass
    L = S.cat
    common = [c for c in x.filter.members if L.leq(x.elem.beta, c) and L.leq(y.elem.beta, c)]
    for c in sorted(common, key=lambda c: -int(L.rank[c])):
        try:
            if restrict(S, x.elem, c) == restrict(S, y.elem, c):
                return True
        except BeyondHorizon:
            continue
    return False


def germ_range(sys_, x: Germ) -> Filter:
    return act_on_filter(sys_, x.elem, x.filter)


def compose_elements(sys_, s: SElement, t: SElement, eps: int) -> SElement:
    """s∘t restricted to the idempotent of ε, a common extension of s's bottom and t's top."""
    S = as_system(sys_)
    L, G, act, coc = S.cat, S.G, S.act, S.coc
    A, a, B = s.alpha, s.g, s.beta
    C, c, D = t.alpha, t.g, t.beta
    mu_b, mu_c = int(L.div[B, eps]), int(L.div[C, eps])
    if mu_b < 0 or mu_c < 0:
        raise NotComposable("ε must extend both the bottom of s and the top of t")
    am = int(act[a, mu_b])
    top = int(L.comp[A, am]) if am >= 0 else -1
    h1 = int(coc[a, mu_b])
    ci = int(G.inverse[c])
    nu = int(act[ci, mu_c])
    k = int(coc[ci, mu_c])
    bottom = int(L.comp[D, nu]) if nu >= 0 else -1
    if top < 0 or bottom < 0:
        raise BeyondHorizon("composite lies beyond the horizon")
    return SElement(top, G.compose(h1, int(G.inverse[k])), bottom)


def compose_germs(sys_, x: Germ, y: Germ) -> Germ:
    """xy, defined when the range filter of y is the filter of x."""
    S = as_system(sys_)
    if germ_range(S, y) != x.filter:
        raise NotComposable("the range of the right germ is not the filter of the left one")
    e = compose_elements(S, x.elem, y.elem, x.filter.top)
    return Germ(e, y.filter)


def invert_germ(sys_, x: Germ) -> Germ:
    S = as_system(sys_)
    s = x.elem
    inv = SElement(s.beta, int(S.G.inverse[s.g]), s.alpha)
    return Germ(inv, germ_range(S, x))


def unit_germ(sys_, F: Filter) -> Germ:
    S = as_system(sys_)
    v = S.cat.rng(F.top)
    e = S.cat.identity(v)
    return Germ(SElement(e, _unit(S, v), e), F)


def degree_cocycle(sys_, x: Germ, d=None):
    """d(α)d(β)⁻¹ in the enveloping group of the length monoid."""
    S = as_system(sys_)
    d = d if d is not None else S.d
    return d.monoid.q_div(d(x.elem.alpha), d(x.elem.beta))


def from_key(sys_, key, filters: dict) -> Germ:
    top, X, h = key
    return Germ(SElement(X, h, top), filters[top])


# -- the groupoid over the tight filters -----------------------------------------------

@dataclass
class GermGroupoid:
    sys: CategorySystem
    filters: FilterSets
    germs: list               # normal forms (X, h)\(top, 1)
    index: dict               # key → position

    @property
    def n(self):
        return len(self.germs)

    def key(self, x: Germ):
        return germ_key(self.sys, x)

    def find(self, x: Germ) -> int:
        return self.index[self.key(x)]


def tight_germs(sys_, filters: FilterSets | None = None, limit: int = 200_000) -> GermGroupoid:
    """All germs over tight filters whose range filter is tight, in normal form."""
    S = as_system(sys_)
    L, G, A = S.cat, S.G, S.action
    fs = filters or enumerate_filters(L)
    tight_tops = np.array(sorted(F.top for F in fs.tight), dtype=np.int64)
    tight_mask = np.zeros(L.n, dtype=bool)
    tight_mask[tight_tops] = True
    ok_X = tight_mask[L.canon]
    germs, index = [], {}
    for F in sorted(fs.tight, key=lambda F: F.top):
        src = L.src(F.top)
        for h in np.flatnonzero(A.unit_object[G.s] == src).tolist():
            o = int(A.unit_object[G.rng(h)])
            for X in np.flatnonzero((L.s == o) & ok_X).tolist():
                key = (F.top, X, h)
                index[key] = len(germs)
                germs.append(Germ(SElement(X, h, F.top), F))
                if len(germs) > limit:
                    from .errors import TooLarge
                    raise TooLarge(f"more than {limit} germs")
    return GermGroupoid(S, fs, germs, index)


def check_germ_groupoid(sys_, gg: GermGroupoid | None = None, triples: bool = True,
                        full_limit: int = 3000, sample: int = 2000, seed: int = 0) -> Report:
    """Associativity, inverses and units up to germ equality; d̄ a homomorphism constant on classes.

    Up to ``full_limit`` germs every composable pair (and triple) is checked;
    past it ``sample`` random germs are drawn with random composable partners.
    """
    S = as_system(sys_)
    gg = gg or tight_germs(S)
    rep = Report("germ-groupoid", truncated=S.truncated)
    rng = [germ_range(S, x) for x in gg.germs]
    by_filter: dict = {}
    by_range: dict = {}
    for i, x in enumerate(gg.germs):
        by_filter.setdefault(x.filter, []).append(i)
        by_range.setdefault(rng[i], []).append(i)
    full = gg.n <= full_limit
    gen = np.random.default_rng(seed)

    def pick(seq, k):
        if full or len(seq) <= k:
            return list(seq)
        return [seq[int(t)] for t in gen.choice(len(seq), size=k, replace=False)]

    chosen = list(range(gg.n)) if full else sorted(int(t) for t in gen.choice(gg.n, size=min(sample, gg.n),
                                                                                 replace=False))
    prod: dict = {}
    bad_closed = ()

    def product(i, j):
        if (i, j) not in prod:
            z = compose_germs(S, gg.germs[i], gg.germs[j])
            prod[(i, j)] = gg.index.get(germ_key(S, z))
        return prod[(i, j)]

    for j in chosen:
        for i in pick(by_filter.get(rng[j], []), 2):
            if product(i, j) is None:
                bad_closed = bad_closed or (i, j)
    rep.add("closed", from_bool(not bad_closed, bad_closed, S.truncated))

    bad_assoc = ()
    if triples:
        for (i, j), ij in list(prod.items()):
            if ij is None:
                continue
            for k in pick(by_range.get(gg.germs[j].filter, []), 2):
                jk = product(j, k)
                if jk is None or product(ij, k) is None or product(i, jk) is None:
                    continue
                if product(ij, k) != product(i, jk):
                    bad_assoc = (i, j, k)
                    break
            if bad_assoc:
                break
    rep.add("associativity", from_bool(not bad_assoc, bad_assoc, S.truncated))

    bad_inv = bad_unit = ()
    for i in chosen:
        x = gg.germs[i]
        xi = invert_germ(S, x)
        u_dom = unit_germ(S, x.filter)
        u_rng = unit_germ(S, rng[i])
        if not germ_equal(S, compose_germs(S, xi, x), u_dom) or not germ_equal(S, compose_germs(S, x, xi), u_rng):
            bad_inv = bad_inv or (i,)
        if not germ_equal(S, compose_germs(S, x, u_dom), x) or not germ_equal(S, compose_germs(S, u_rng, x), x):
            bad_unit = bad_unit or (i,)
    rep.add("inverses", from_bool(not bad_inv, bad_inv, S.truncated))
    rep.add("units", from_bool(not bad_unit, bad_unit, S.truncated))

    if S.d is not None:
        M = S.d.monoid
        deg: dict = {}

        def degree(i):
            if i not in deg:
                deg[i] = degree_cocycle(S, gg.germs[i])
            return deg[i]

        bad_hom = next(((i, j) for (i, j), k in prod.items()
                        if k is not None and degree(k) != M.q_mul(degree(i), degree(j))), ())
        bad_hom = bad_hom or next(((i,) for i in chosen
                                   if degree_cocycle(S, invert_germ(S, gg.germs[i])) != M.q_inv(degree(i))), ())
        rep.add("degree-homomorphism", from_bool(not bad_hom, bad_hom, S.truncated))
        # other representatives of each germ: move the bottom down to any member of the filter
        bad_const = ()
        for i in chosen:
            x = gg.germs[i]
            for b in x.filter.members:
                mu = int(S.cat.div[b, x.filter.top])
                if mu < 0 or b == x.filter.top:
                    continue
                # (X, h)\(top,1) = (Y, k)\(b,1) needs Y(k·μ) = X and φ̂(k, μ) = h
                for k in np.flatnonzero(S.action.unit_object[S.G.s] == S.cat.src(b)).tolist():
                    km = int(S.act[k, mu])
                    if km < 0 or int(S.coc[k, mu]) != x.elem.g:
                        continue
                    Y = _left_factor(S.cat, x.elem.alpha, km)
                    if Y is None:
                        continue
                    alt = Germ(SElement(Y, k, b), x.filter)
                    if not germ_equal(S, alt, x):
                        bad_const = bad_const or (i, b, "equal")
                    elif degree_cocycle(S, alt) != degree(i):
                        bad_const = bad_const or (i, b)
        rep.add("degree-constant", from_bool(not bad_const, bad_const, S.truncated))
    rep.data["germs"] = gg.n
    rep.data["pairs"] = len(prod)
    if not full:
        rep.notes.append(f"{len(chosen)} of {gg.n} germs sampled with random composable partners")
    return rep


def _left_factor(cat: FiniteCategory, X: int, right: int):
    """Y with Y∘right = X, if any."""
    col = np.flatnonzero(cat.comp[:, right] == X)
    return int(col[0]) if len(col) else None
