"""Partial isomorphisms, groupoid actions and category cocycles.

An action of a groupoid G on Λ is stored as two integer tables indexed by
(G morphism, Λ morphism): ``act[g, α] = g·α`` and ``coc[g, α]`` (the cocycle
value), both ``-1`` where ``s(g)`` is not ``r(α)``.  G objects are identified
with Λ objects through ``unit_object``.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .category import FiniteCategory
from .errors import DomainError, NotComposable, ValidationError
from .length import LengthAssignment, is_action_free
from .verdict import Report, Verdict, fails, from_bool, holds

UNKNOWN = -2  # value lies beyond the horizon of the table


class PartialIso:
    """A bijection vΛ → wΛ stored as an array over Λ's morphisms."""

    def __init__(self, cat: FiniteCategory, dom: int, cod: int, table):
        self.cat = cat
        self.dom = int(dom)
        self.cod = int(cod)
        self.table = np.asarray(table, dtype=np.int64)
        self.table.setflags(write=False)

    @classmethod
    def identity(cls, cat: FiniteCategory, v: int) -> "PartialIso":
        t = np.full(cat.n, -1, dtype=np.int64)
        dom = cat.with_range[v]
        t[dom] = dom
        return cls(cat, v, v, t)

    @classmethod
    def from_map(cls, cat, dom, cod, mapping: dict) -> "PartialIso":
        t = np.full(cat.n, -1, dtype=np.int64)
        for a, b in mapping.items():
            t[a] = b
        return cls(cat, dom, cod, t)

    def __call__(self, a: int) -> int:
        v = int(self.table[a])
        if v == -1:
            raise DomainError(f"{self.cat.name(a)} is not in the domain")
        return v

    @property
    def domain(self) -> np.ndarray:
        return self.cat.with_range[self.dom]

    @property
    def known(self) -> np.ndarray:
        return self.domain[self.table[self.domain] >= 0]

    def __eq__(self, other):
        if not isinstance(other, PartialIso):
            return NotImplemented
        if (self.dom, self.cod) != (other.dom, other.cod):
            return False
        both = (self.table != UNKNOWN) & (other.table != UNKNOWN)
        return bool(np.array_equal(self.table[both], other.table[both]))

    def __hash__(self):
        return hash((self.dom, self.cod))

    def __repr__(self):
        c = self.cat
        pairs = ", ".join(f"{c.name(a)}→{c.name(int(self.table[a]))}" for a in self.known[:6])
        more = "…" if len(self.known) > 6 else ""
        return f"PartialIso({c.objects[self.dom]}→{c.objects[self.cod]}: {pairs}{more})"


def validate_partial_iso(cat: FiniteCategory, d: LengthAssignment | None, f: PartialIso) -> Report:
    """The four defining conditions plus: invertibles are sent to invertibles."""
    rep = Report("partial-iso", truncated=cat.truncated)
    dom = f.domain
    img = f.table[dom]
    known = img >= 0
    target = set(cat.with_range[f.cod].tolist())
    outside = [int(a) for a, b in zip(dom[known], img[known]) if int(b) not in target]
    injective = len(set(img[known].tolist())) == int(known.sum())
    onto = cat.truncated or set(img[known].tolist()) == target
    w = outside[:1] or ([] if injective else [int(dom[known][0])])
    rep.add("bijection", from_bool(not outside and injective and onto, w, cat.truncated))

    ideal_bad = None
    for a in dom[known].tolist():
        fa = int(f.table[a])
        ext = np.flatnonzero(cat.ideal_mask[a])
        mapped = f.table[ext]
        if (mapped == UNKNOWN).any():
            continue
        if set(mapped.tolist()) != set(np.flatnonzero(cat.ideal_mask[fa]).tolist()):
            # a truncated codomain may hold extensions whose preimage lies past the horizon
            if not cat.truncated or not set(mapped.tolist()) <= set(np.flatnonzero(cat.ideal_mask[fa]).tolist()):
                ideal_bad = (a,)
                break
    rep.add("ideals", from_bool(ideal_bad is None, ideal_bad or (), cat.truncated))

    v, w_ = cat.identity(f.dom), cat.identity(f.cod)
    rep.add("unit", from_bool(int(f.table[v]) == w_, (v,)))
    if d is not None:
        bad = [a for a in dom[known].tolist() if d(a) != d(int(f.table[a]))]
        rep.add("length", from_bool(not bad, bad[:1], cat.truncated))
    bad_inv = [a for a in dom[known].tolist() if cat.is_invertible(a) and not cat.is_invertible(int(f.table[a]))]
    rep.add("invertibles", from_bool(not bad_inv, bad_inv[:1], cat.truncated))
    return rep


def restrict(f: PartialIso, a: int) -> PartialIso:
    """The partial iso f|a with f(aβ) = f(a)·f|a(β)."""
    cat = f.cat
    if cat.rng(a) != f.dom:
        raise DomainError(f"{cat.name(a)} is not in {cat.objects[f.dom]}Λ")
    fa = int(f.table[a])
    if fa < 0:
        raise DomainError(f"f({cat.name(a)}) is unknown")
    mu = cat.with_range[cat.src(a)]
    t = np.full(cat.n, -1, dtype=np.int64)
    amu = cat.comp[a, mu]
    ok = amu >= 0
    vals = np.full(len(mu), UNKNOWN, dtype=np.int64)
    fam = f.table[amu[ok]]
    quo = np.where(fam >= 0, cat.div[fa, np.maximum(fam, 0)], UNKNOWN)
    vals[ok] = quo
    t[mu] = vals
    return PartialIso(cat, cat.src(a), cat.src(fa), t)


def piso_compose(f: PartialIso, g: PartialIso) -> PartialIso:
    if f.dom != g.cod:
        raise NotComposable("domain of the left map is not the codomain of the right map")
    t = np.full(f.cat.n, -1, dtype=np.int64)
    dom = g.domain
    gv = g.table[dom]
    t[dom] = np.where(gv >= 0, f.table[np.maximum(gv, 0)], gv)
    return PartialIso(f.cat, g.dom, f.cod, t)


def piso_inverse(f: PartialIso) -> PartialIso:
    t = np.full(f.cat.n, -1, dtype=np.int64)
    t[f.cat.with_range[f.cod]] = UNKNOWN
    for a in f.known.tolist():
        t[int(f.table[a])] = a
    return PartialIso(f.cat, f.cod, f.dom, t)


# -- actions --------------------------------------------------------------------

class GroupoidAction:
    """``G`` acting on ``cat``; ``act`` and ``coc`` are |G| × |Λ| tables."""

    def __init__(self, cat: FiniteCategory, G: FiniteCategory, unit_object, act, coc=None):
        self.cat = cat
        self.G = G
        self.unit_object = np.asarray(unit_object, dtype=np.int64)
        self.act = np.asarray(act, dtype=np.int64)
        self.coc = None if coc is None else np.asarray(coc, dtype=np.int64)
        if self.act.shape != (G.n, cat.n):
            raise ValidationError(f"action table must be {G.n}×{cat.n}")
        if self.coc is not None and self.coc.shape != self.act.shape:
            raise ValidationError("cocycle table shape differs from the action table")
        if len(self.unit_object) != len(G.objects):
            raise ValidationError("every groupoid object needs a Λ object")
        self.object_unit = {int(o): u for u, o in enumerate(self.unit_object)}

    @cached_property
    def applicable(self) -> np.ndarray:
        """Boolean |G|×|Λ| mask of pairs with s(g) = r(α)."""
        su = self.unit_object[self.G.s]
        return su[:, None] == self.cat.r[None, :]

    def g_unit_at(self, obj: int) -> int:
        """The groupoid identity sitting over a Λ object."""
        return self.G.identity(self.object_unit[obj])

    def phi(self, g: int) -> PartialIso:
        G = self.G
        return PartialIso(self.cat, self.unit_object[G.src(g)], self.unit_object[G.rng(g)], self.act[g])

    def dot(self, g: int, a: int) -> int:
        v = int(self.act[g, a])
        if v < 0:
            raise DomainError(f"{self.G.name(g)} cannot act on {self.cat.name(a)}")
        return v

    def cocycle(self, g: int, a: int) -> int:
        v = int(self.coc[g, a])
        if v < 0:
            raise DomainError(f"cocycle undefined at ({self.G.name(g)}, {self.cat.name(a)})")
        return v


def validate_action(act: GroupoidAction, d: LengthAssignment | None = None) -> Report:
    """Homomorphism into partial isos, unit bijection, and self-similarity (with witnesses h)."""
    cat, G = act.cat, act.G
    rep = Report("action", truncated=cat.truncated)
    nonunits = [g for g in range(G.n) if not G.is_invertible(g)]
    rep.add("groupoid", from_bool(not nonunits, nonunits[:1]))
    uo = act.unit_object.tolist()
    rep.add("unit-bijection", from_bool(sorted(uo) == list(range(len(cat.objects))), tuple(uo)))
    app = act.applicable
    bad = np.argwhere(app & (act.act < 0))
    rep.add("total", from_bool(len(bad) == 0, tuple(bad[0]) if len(bad) else ()))
    if len(bad):
        return rep
    wrong_end = None
    for g in range(G.n):
        for a in np.flatnonzero(app[g]).tolist():
            b = int(act.act[g, a])
            if cat.rng(b) != act.unit_object[G.rng(g)]:
                wrong_end = (g, a)
                break
        if wrong_end:
            break
    rep.add("ranges", from_bool(wrong_end is None, wrong_end or ()))

    piso_bad = None
    for g in range(G.n):
        r = validate_partial_iso(cat, d, act.phi(g))
        if r.fails:
            k, v = next(iter(r.failures().items()))
            piso_bad = (g, k) + v.witness
            break
    rep.add("partial-isos", from_bool(piso_bad is None, piso_bad or (), cat.truncated))

    units_bad = [int(e) for e in G.ids if not np.array_equal(
        act.act[e][app[e]], np.flatnonzero(app[e]))]
    hom_bad = None
    for g in range(G.n):
        for h in np.flatnonzero(G.comp[g] >= 0).tolist():
            gh = int(G.comp[g, h])
            cols = np.flatnonzero(app[h])
            lhs = act.act[gh, cols]
            rhs = act.act[g, act.act[h, cols]]
            diff = np.flatnonzero(lhs != rhs)
            if len(diff):
                hom_bad = (g, h, int(cols[diff[0]]))
                break
        if hom_bad:
            break
    rep.add("homomorphism", from_bool(hom_bad is None and not units_bad,
                                      hom_bad or tuple(units_bad[:1])))

    rows = {g: act.act[g] for g in range(G.n)}
    ss_bad = None
    witnesses = {}
    for g in range(G.n):
        f = act.phi(g)
        for a in np.flatnonzero(app[g]).tolist():
            res = restrict(f, a)
            hs = []
            for h in np.flatnonzero(act.unit_object[G.s] == cat.src(a)).tolist():
                if act.unit_object[G.rng(h)] != res.cod:
                    continue
                mu = res.domain
                want = res.table[mu]
                known = want != UNKNOWN
                if np.array_equal(rows[h][mu][known], want[known]):
                    hs.append(h)
            if not hs:
                ss_bad = (g, a)
                break
            witnesses[(g, a)] = hs
        if ss_bad:
            break
    rep.add("self-similar", from_bool(ss_bad is None, ss_bad or (), cat.truncated))
    rep.data["witnesses"] = witnesses
    return rep


def lift_cocycle(act: GroupoidAction) -> np.ndarray:
    """The unique cocycle of a faithful self-similar action; raises when none or several exist."""
    rep = validate_action(act)
    if rep.fails:
        raise ValidationError("action is not a self-similar groupoid action",
                              next(iter(rep.failures().values())).witness)
    coc = np.full(act.act.shape, -1, dtype=np.int64)
    for (g, a), hs in rep.data["witnesses"].items():
        if len(hs) > 1:
            raise ValidationError("several groupoid elements restrict the same way; the action is not faithful",
                                  (g, a) + tuple(hs))
        coc[g, a] = hs[0]
    return coc


@dataclass
class CategorySystem:
    cat: FiniteCategory
    d: LengthAssignment | None
    action: GroupoidAction
    label: str = ""

    @property
    def G(self) -> FiniteCategory:
        return self.action.G

    @property
    def act(self) -> np.ndarray:
        return self.action.act

    @property
    def coc(self) -> np.ndarray:
        return self.action.coc

    @property
    def truncated(self) -> bool:
        return self.cat.truncated

    @cached_property
    def validation(self) -> Report:
        rep = validate_category_cocycle(self)
        return rep

    @property
    def valid(self) -> bool:
        return self.validation.holds


def validate_category_cocycle(sys_: CategorySystem) -> Report:
    """Cocycle identity, the five category cocycle axioms, derived identities and restriction compatibility."""
    cat, G, A = sys_.cat, sys_.G, sys_.action
    act, coc = A.act, A.coc
    rep = Report("cocycle", truncated=cat.truncated)
    base = validate_action(A, sys_.d)
    rep.add("action", base.as_verdict())
    if coc is None:
        rep.add("cocycle-table", fails((), "no cocycle supplied"))
        return rep
    app = A.applicable
    missing = np.argwhere(app & (coc < 0))
    rep.add("cocycle-table", from_bool(len(missing) == 0, tuple(missing[0]) if len(missing) else ()))
    if len(missing) or base["total"].fails:
        return rep
    uo = A.unit_object
    Gs, Gr = G.s, G.r

    def first(mask, *cols):
        idx = np.flatnonzero(mask)
        return () if not len(idx) else tuple(int(c[idx[0]]) for c in cols)

    gi, ai = np.nonzero(app)
    gx, cx = act[gi, ai], coc[gi, ai]

    # cocycle identity φ̂(gh, α) = φ̂(g, h·α) φ̂(h, α)
    bad = ()
    for g in range(G.n):
        for h in np.flatnonzero(G.comp[g] >= 0).tolist():
            gh = int(G.comp[g, h])
            cols = np.flatnonzero(app[h])
            lhs = coc[gh, cols]
            rhs = G.comp[coc[g, act[h, cols]], coc[h, cols]]
            wrong = lhs != rhs
            if wrong.any():
                bad = (g, h, int(cols[np.argmax(wrong)]))
                break
        if bad:
            break
    rep.add("cocycle-identity", from_bool(not bad, bad))

    # (1) φ̂(g, s(g)) = g
    unit_cols = cat.ids[uo[Gs]]
    w = coc[np.arange(G.n), unit_cols] != np.arange(G.n)
    rep.add("axiom1", from_bool(not w.any(), first(w, np.arange(G.n))))
    # (2) s(g·α) = φ̂(g,α)·s(α) = r(φ̂(g,α))
    s_ga = cat.s[gx]
    r_c = uo[Gr[cx]]
    c_on_s = act[cx, cat.ids[cat.s[ai]]]
    w = (s_ga != r_c) | (cat.ids[s_ga] != c_on_s)
    rep.add("axiom2", from_bool(not w.any(), first(w, gi, ai)))
    # (3) φ̂(r(α), α) = s(α)
    rid = G.ids[[A.object_unit[int(o)] for o in cat.r]]
    sid = G.ids[[A.object_unit[int(o)] for o in cat.s]]
    w = coc[rid, np.arange(cat.n)] != sid
    rep.add("axiom3", from_bool(not w.any(), first(w, np.arange(cat.n))))

    # (4) φ̂(g, αβ) = φ̂(φ̂(g,α), β) and (5) g·(αβ) = (g·α)(φ̂(g,α)·β) over defined products
    bad4 = bad5 = ()
    for g in range(G.n):
        alphas = np.flatnonzero(app[g])
        sub = cat.comp[alphas]
        ai2, bi2 = np.nonzero(sub >= 0)
        if not len(ai2):
            continue
        al = alphas[ai2]
        ab = sub[ai2, bi2]
        c = coc[g, al]
        lhs4 = coc[g, ab]
        rhs4 = coc[c, bi2]
        w4 = lhs4 != rhs4
        if w4.any() and not bad4:
            i = int(np.argmax(w4))
            bad4 = (g, int(al[i]), int(bi2[i]))
        lhs5 = act[g, ab]
        rhs5 = cat.comp[act[g, al], act[c, bi2]]
        w5 = lhs5 != rhs5
        if w5.any() and not bad5:
            i = int(np.argmax(w5))
            bad5 = (g, int(al[i]), int(bi2[i]))
        if bad4 and bad5:
            break
    rep.add("axiom4", from_bool(not bad4, bad4, cat.truncated))
    rep.add("axiom5", from_bool(not bad5, bad5, cat.truncated))

    # derived identities
    w = cat.r[gx] != uo[Gr[gi]]
    rep.add("range-equivariance", from_bool(not w.any(), first(w, gi, ai)))
    w = uo[Gs[cx]] != cat.s[ai]
    rep.add("cocycle-source", from_bool(not w.any(), first(w, gi, ai)))
    ginv = G.inverse
    w = G.inverse[cx] != coc[ginv[gi], gx]
    rep.add("cocycle-inverse", from_bool(not w.any(), first(w, gi, ai)))

    # φ(φ̂(g,α)) = φ(g)|α
    bad = ()
    for g in range(G.n):
        f = A.phi(g)
        for a in np.flatnonzero(app[g]).tolist():
            if A.phi(int(coc[g, a])) != restrict(f, a):
                bad = (g, a)
                break
        if bad:
            break
    rep.add("restriction", from_bool(not bad, bad, cat.truncated))
    return rep


def is_pseudo_free(sys_: CategorySystem) -> Verdict:
    """Λ action-free, and g·α = fα with trivial cocycle and f invertible forces g to be a unit."""
    cat, G, A = sys_.cat, sys_.G, sys_.action
    af = is_action_free(cat)
    if af.fails:
        return fails(af.witness, "the category is not action-free", part="action-free")
    inv = cat.invertible_ids
    app = A.applicable
    for g in range(G.n):
        if G.is_identity(g):
            continue
        alphas = np.flatnonzero(app[g])
        triv = A.coc[g, alphas] == G.ids[[A.object_unit[int(o)] for o in cat.s[alphas]]]
        for a in alphas[triv].tolist():
            ga = int(A.act[g, a])
            hit = np.flatnonzero(cat.comp[inv, a] == ga)
            if len(hit):
                return fails((g, a, int(inv[hit[0]])),
                             f"{G.name(g)}·{cat.name(a)} = {cat.name(int(inv[hit[0]]))}{cat.name(a)} with trivial cocycle",
                             part="cocycle")
    return holds(cat.truncated)


# -- building full tables from generator data ------------------------------------

def letter_words(cat: FiniteCategory):
    """Words of the morphisms: generator words, or singletons in explicit mode."""
    if cat.words is not None:
        return cat.words
    return tuple(() if cat.is_identity(m) else (cat.name(m),) for m in range(cat.n))


def extend_action(cat: FiniteCategory, G: FiniteCategory, unit_object, entries: dict, cocycle: dict):
    """Extend data given on (groupoid letter, category letter) pairs to full tables.

    ``entries[(ℓ, x)]`` and ``cocycle[(ℓ, x)]`` are morphism ids.  Rows of
    inverse groupoid letters may be omitted; they are obtained by inverting
    the row of the letter.  Products use ``g·(xw) = (g·x)(φ̂(g,x)·w)`` and
    ``φ̂(gh, α) = φ̂(g, h·α)φ̂(h, α)``.
    """
    lw = letter_words(cat)
    gw = letter_words(G)
    uo = np.asarray(unit_object, dtype=np.int64)
    object_unit = {int(o): u for u, o in enumerate(uo)}
    index = {}
    for m, w in enumerate(lw):
        if w:
            index[w] = m
    letter_id = {w[0]: m for w, m in index.items() if len(w) == 1}
    given = {l for l, _ in entries}
    gletter_id = {}
    for m, w in enumerate(gw):
        if len(w) == 1:
            gletter_id[w[0]] = m
    memo_a: dict = {}
    memo_c: dict = {}
    inverted: dict = {}
    busy = set()

    def g_identity_at(obj):
        return G.identity(object_unit[obj])

    def inverse_row(l):
        if l in inverted:
            return inverted[l]
        m = gletter_id[l]
        inv = int(G.inverse[m])
        if inv < 0:
            raise ValidationError(f"groupoid letter {l} has no inverse")
        lw_inv = gw[inv]
        if len(lw_inv) != 1 or lw_inv[0] not in given:
            raise ValidationError(f"no action given for groupoid letter {l}")
        row = {}
        for a in range(cat.n):
            if uo[G.src(inv)] != cat.rng(a):
                continue
            b = act_on(inv, a)
            row[b] = (a, int(G.inverse[coc_on(inv, a)]))
        inverted[l] = row
        return row

    def letter_pair(l, x_id):
        x = lw[x_id][0]
        if (l, x) in entries:
            return entries[(l, x)], cocycle[(l, x)]
        if l in given:
            raise ValidationError(f"action of {l} on {x} missing")
        row = inverse_row(l)
        if x_id not in row:
            raise ValidationError(f"action of {l} on {x} cannot be derived")
        return row[x_id]

    def both(g, a):
        key = (g, a)
        if key in memo_a:
            return memo_a[key], memo_c[key]
        if key in busy:
            raise ValidationError(f"action recursion does not terminate at ({G.name(g)}, {cat.name(a)})")
        busy.add(key)
        if uo[G.src(g)] != cat.rng(a):
            raise DomainError("groupoid element cannot act on this morphism")
        wg, wa = gw[g], lw[a]
        if not wg:
            res = (a, g_identity_at(cat.src(a)))
        elif not wa:
            res = (cat.identity(int(uo[G.rng(g)])), g)
        elif len(wg) == 1 and len(wa) == 1:
            res = letter_pair(wg[0], a)
        elif len(wg) == 1:
            x = letter_id[wa[0]]
            rest = index[wa[1:]]
            gx, h = both(g, x)
            hr, c = both(h, rest)
            res = (cat.compose(gx, hr), c)
        else:
            first_l = gletter_id[wg[0]]
            rest_g = _word_id(G, wg[1:])
            b, c2 = both(rest_g, a)
            b2, c1 = both(first_l, b)
            res = (b2, G.compose(c1, c2))
        busy.discard(key)
        memo_a[key], memo_c[key] = int(res[0]), int(res[1])
        return memo_a[key], memo_c[key]

    def act_on(g, a):
        return both(g, a)[0]

    def coc_on(g, a):
        return both(g, a)[1]

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 20000))
    try:
        A = np.full((G.n, cat.n), -1, dtype=np.int64)
        C = np.full((G.n, cat.n), -1, dtype=np.int64)
        for g in range(G.n):
            for a in cat.with_range[int(uo[G.src(g)])].tolist():
                A[g, a], C[g, a] = both(g, a)
    finally:
        sys.setrecursionlimit(limit)
    return A, C


def _word_id(G: FiniteCategory, word) -> int:
    gw = letter_words(G)
    for m, w in enumerate(gw):
        if w == tuple(word):
            return m
    # the tail of a normal form might not be stored verbatim; rebuild it
    m = None
    for x in reversed(word):
        xid = next(i for i, w in enumerate(gw) if w == (x,))
        m = xid if m is None else G.compose(xid, m)
    return m


def system_from_tables(cat, d, G, unit_object, act, coc, label="") -> CategorySystem:
    return CategorySystem(cat, d, GroupoidAction(cat, G, unit_object, act, coc), label)


def trivial_system(cat: FiniteCategory, d: LengthAssignment | None, label="") -> CategorySystem:
    """The one-unit-per-object groupoid acting trivially."""
    from .category import FiniteCategory as FC
    k = len(cat.objects)
    G = FC(cat.objects, [f"id_{o}" for o in cat.objects], range(k), range(k), range(k), {},
           label="units")
    A = np.full((k, cat.n), -1, dtype=np.int64)
    C = np.full((k, cat.n), -1, dtype=np.int64)
    for a in range(cat.n):
        A[cat.rng(a), a] = a
        C[cat.rng(a), a] = cat.src(a)
    return system_from_tables(cat, d, G, np.arange(k), A, C, label)
