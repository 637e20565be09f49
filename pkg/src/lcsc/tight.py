"""Properties of the tight groupoid: Hausdorff, topological freeness, minimality,
property (★), the kernel pieces K_g and the map t^(g).

All checkers work on finite tables.  On a truncated table every quantifier
runs inside the window and the verdict says so; the Hausdorff test is the
one place where several windows are compared.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .action import CategorySystem, is_pseudo_free
from .errors import PreconditionUnverified
from .filters import FilterSets, enumerate_filters
from .germs import GermGroupoid, as_system, germ_range
from .length import LengthAssignment, check_wfp
from .verdict import (HAUSDORFF, INCONCLUSIVE, NOT_HAUSDORFF, Report, Verdict, fails, from_bool,
                      holds)


def _sizes(S: CategorySystem) -> np.ndarray:
    if S.d is not None:
        return np.asarray(S.d.sizes, dtype=np.int64)
    return np.zeros(S.cat.n, dtype=np.int64)


def _meet_matrix(cat) -> np.ndarray:
    m = cat.ideal_mask.astype(np.float32)
    return (m @ m.T) > 0


def _unit_cols(S: CategorySystem) -> np.ndarray:
    """unit_at_src[γ]: the groupoid identity over s(γ)."""
    A = S.action
    return S.G.ids[[A.object_unit[int(o)] for o in S.cat.s]]


# -- Hausdorff --------------------------------------------------------------------

def hausdorff_fast_path(S: CategorySystem) -> Verdict | None:
    """Pseudo-free with the WFP forces Hausdorff; None when the shortcut does not apply."""
    if S.d is None:
        return None
    if not check_wfp(S.cat, S.d).holds:
        return None
    pf = is_pseudo_free(S)
    if not pf.holds:
        return None
    return Verdict(HAUSDORFF, (), "pseudo-free with the WFP", {"fast_path": True})


def fixed_sets(S: CategorySystem) -> dict:
    """T_s = {γ : α(g·γ) = βγ, φ(g,γ) = s(γ)} inside the table, keyed by (α, β, g)."""
    L, G = S.cat, S.G
    n = L.n
    act, coc = S.act, S.coc
    unit_src = _unit_cols(S)
    out: dict = {}
    for g in range(G.n):
        gam = np.flatnonzero((act[g] >= 0) & (coc[g] == unit_src))
        if not len(gam):
            continue
        A = L.comp[:, act[g, gam]]          # A[α, j] = α(g·γ_j)
        B = L.comp[:, gam]                  # B[β, j] = βγ_j
        ai, aj = np.nonzero(A >= 0)
        bi, bj = np.nonzero(B >= 0)
        ka = aj.astype(np.int64) * n + A[ai, aj]
        kb = bj.astype(np.int64) * n + B[bi, bj]
        order = np.argsort(ka, kind="stable")
        ka, ai, aj = ka[order], ai[order], aj[order]
        lo = np.searchsorted(ka, kb, "left")
        hi = np.searchsorted(ka, kb, "right")
        cnt = hi - lo
        if not cnt.sum():
            continue
        rep_b = np.repeat(np.arange(len(kb)), cnt)
        offs = np.arange(cnt.sum()) - np.repeat(np.cumsum(cnt) - cnt, cnt)
        ia = lo[rep_b] + offs
        alpha, beta, j = ai[ia], bi[rep_b], aj[ia]
        key = alpha.astype(np.int64) * n + beta
        order = np.argsort(key, kind="stable")
        key, j = key[order], j[order]
        splits = np.flatnonzero(np.diff(key)) + 1
        for ks, js in zip(np.split(key, splits), np.split(j, splits)):
            a, b = divmod(int(ks[0]), n)
            out[(a, b, g)] = gam[np.unique(js)]
    return out


def independent_lower_bound(meet: np.ndarray) -> tuple[int, list]:
    """Greedy set C ⊆ T with no member of T meeting two elements of C; any cover has ≥ |C| elements."""
    k = len(meet)
    count = np.zeros(k, dtype=np.int64)
    chosen = []
    for c in np.argsort(meet.sum(axis=0), kind="stable"):
        col = meet[:, c]
        if not count[col].any():
            chosen.append(int(c))
            count[col] += 1
    return len(chosen), chosen


def greedy_cover(meet: np.ndarray) -> list:
    k = len(meet)
    left = np.ones(k, dtype=bool)
    cover = []
    while left.any():
        c = int((meet[left]).sum(axis=0).argmax())
        cover.append(c)
        left &= ~meet[:, c]
    return cover


def cover_bounds(S: CategorySystem, meet=None, by_name: bool = True) -> dict:
    """(lower, upper) bounds on the smallest ⋒-cover of each T_s."""
    L, G = S.cat, S.G
    meet = _meet_matrix(L) if meet is None else meet
    cache: dict = {}
    out = {}
    for (a, b, g), T in fixed_sets(S).items():
        k = T.tobytes()
        if k not in cache:
            M = meet[np.ix_(T, T)]
            lb, chosen = independent_lower_bound(M)
            cache[k] = (lb, len(greedy_cover(M)), [int(T[c]) for c in chosen])
        lb, ub, chosen = cache[k]
        key = (L.name(a), L.name(b), G.name(g)) if by_name else (a, b, g)
        out[key] = (lb, ub, [L.name(c) for c in chosen] if by_name else chosen)
    return out


def check_hausdorff(sys_, horizons=(), rebuild: Callable[[int], CategorySystem] | None = None,
                    fast_path: bool = True) -> Verdict:
    """hausdorff / not-hausdorff / inconclusive-at-horizon.

    Finite untruncated tables are Hausdorff because every T_s is finite.
    On truncated tables a not-hausdorff verdict needs a growth certificate:
    some T_s whose cover lower bound strictly increases along at least
    three horizons, obtained from ``rebuild(h)``.
    """
    S = as_system(sys_)
    fp = hausdorff_fast_path(S) if fast_path else None
    if fp is not None:
        return fp
    if not S.truncated:
        return Verdict(HAUSDORFF, (), "finite table: every T_s is finite", {"fast_path": False})
    hs = sorted(set(int(h) for h in horizons) | {int(S.cat.horizon)}) if rebuild else [int(S.cat.horizon)]
    bounds = {}
    for h in hs:
        Sh = S if h == S.cat.horizon else rebuild(h)
        bounds[h] = cover_bounds(Sh)
    data = {"fast_path": False, "horizons": hs}
    if len(hs) >= 3:
        common = set.intersection(*(set(b) for b in bounds.values()))
        best = None
        for s in sorted(common):
            lbs = [bounds[h][s][0] for h in hs]
            if all(x < y for x, y in zip(lbs, lbs[1:])) and (best is None or lbs[-1] > best[1][-1]):
                best = (s, lbs)
        if best is not None:
            s, lbs = best
            data.update(certificate={"s": list(s), "lower_bounds": lbs,
                                     "upper_bounds": [bounds[h][s][1] for h in hs],
                                     "pairwise_apart": bounds[hs[-1]][s][2]})
            return Verdict(NOT_HAUSDORFF, s, f"cover of T_s for {s} grows {lbs} over horizons {hs}", data)
    worst = max((v[0] for v in bounds[hs[-1]].values()), default=0)
    data["largest_lower_bound"] = worst
    return Verdict(INCONCLUSIVE, (), "no growth certificate inside the windows", data)


# -- the precondition shared by the next checkers ------------------------------------

@dataclass
class Precondition:
    reason: str
    hausdorff: Verdict | None = None
    filters: FilterSets | None = None


def precondition(sys_, hausdorff: Verdict | None = None, filters: FilterSets | None = None) -> Precondition:
    """Hausdorff, or Λ_tight = Λ** on a finite table; raises PreconditionUnverified otherwise."""
    S = as_system(sys_)
    if not S.truncated:
        fs = filters or enumerate_filters(S.cat)
        if fs.tight_is_maximal:
            return Precondition("tight filters are the maximal ones", hausdorff, fs)
    hv = hausdorff if hausdorff is not None else check_hausdorff(S)
    if hv.status == HAUSDORFF:
        return Precondition("the tight groupoid is Hausdorff", hv, filters)
    raise PreconditionUnverified("neither Hausdorff nor tight = maximal could be established"
                                 f" (Hausdorff check: {hv.status})")


# -- topological freeness -------------------------------------------------------------

def check_topological_freeness(sys_, pre: Precondition | None = None, meet=None) -> Verdict:
    """For α ⋒ β and a, b with a common source: if α(a·δ) ⋒ β(b·δ) for all δ then the
    δ with α(a·δ) = β(b·δ) and φ(a,δ) = φ(b,δ) form an exhaustive set.

    On truncated tables δ is limited to sizes keeping both sides in the window.
    """
    S = as_system(sys_)
    pre = pre or precondition(S)
    L, G, A = S.cat, S.G, S.action
    act, coc = S.act, S.coc
    meet = _meet_matrix(L) if meet is None else meet
    size = _sizes(S)
    h = L.horizon
    uo = A.unit_object
    shallow = 0
    checked = 0
    for o in range(len(G.objects)):
        x = int(uo[o])
        deltas = np.flatnonzero(L.r == x)
        deltas = deltas[np.argsort(size[deltas], kind="stable")]
        gens = np.flatnonzero(G.s == o)
        for a in gens.tolist():
            alphas = np.flatnonzero(L.s == uo[G.rng(a)])
            for b in gens.tolist():
                betas_all = np.flatnonzero(L.s == uo[G.rng(b)])
                for al in alphas.tolist():
                    betas = betas_all[(L.r[betas_all] == L.r[al]) & meet[al, betas_all]]
                    if not len(betas):
                        continue
                    if h is None:
                        depth = np.full(len(betas), np.iinfo(np.int64).max)
                    else:
                        depth = h - np.maximum(size[al], size[betas])
                    shallow += int((depth < 1).sum()) if h is not None else 0
                    for dep in np.unique(depth[depth >= (1 if h is not None else 0)]).tolist():
                        D = deltas[size[deltas] <= dep]
                        bs = betas[depth == dep]
                        ad, bd = act[a, D], act[b, D]
                        if (ad < 0).any() or (bd < 0).any():
                            continue
                        XA = L.comp[al, ad]
                        XB = L.comp[np.ix_(bs, bd)]
                        inside = (XA >= 0)[None, :] & (XB >= 0)
                        hyp = np.where(inside, meet[np.maximum(XA, 0)[None, :], np.maximum(XB, 0)], True).all(axis=1)
                        same_coc = coc[a, D] == coc[b, D]
                        meetD = meet[np.ix_(D, D)]
                        for i in np.flatnonzero(hyp).tolist():
                            checked += 1
                            E = (XA == XB[i]) & same_coc & inside[i]
                            if not E.any() or not meetD[:, E].any(axis=1).all():
                                be = int(bs[i])
                                return fails((al, be, a, b),
                                             f"α={L.name(al)}, β={L.name(be)}, a={G.name(a)}, b={G.name(b)}: "
                                             "the agreement set is not exhaustive",
                                             precondition=pre.reason, checked=checked)
    note = "quantifiers over δ evaluated inside the window" if h is not None else ""
    return holds(S.truncated, note, precondition=pre.reason, checked=checked, shallow_pairs=shallow)


# -- minimality ---------------------------------------------------------------------

def orbit_reach(S: CategorySystem) -> np.ndarray:
    """good[t, o]: some object in the orbit of o has a morphism into t."""
    L, G, A = S.cat, S.G, S.action
    k = len(L.objects)
    orb = np.eye(k, dtype=bool)
    for g in range(G.n):
        orb[A.unit_object[G.src(g)], A.unit_object[G.rng(g)]] = True
    reach = np.zeros((k, k), dtype=bool)          # reach[o, t]: a morphism o → t
    reach[L.s, L.r] = True
    return (orb.astype(np.int64) @ reach.astype(np.int64)).T > 0


def check_minimality(sys_, pre: Precondition | None = None) -> Verdict:
    """For all α, β: the γ ∈ r(α)Λ whose source's orbit reaches s(β) are exhaustive for α."""
    S = as_system(sys_)
    pre = pre or precondition(S)
    L = S.cat
    good_obj = orbit_reach(S)
    I = L.ideal_mask
    for t in range(len(L.objects)):
        good = good_obj[t][L.s]
        reach = I[good].any(axis=0)
        meets_good = (I & reach[None, :]).any(axis=1)
        ok = ~(I & ~meets_good[None, :]).any(axis=1)
        if not ok.all():
            al = int(np.flatnonzero(~ok)[0])
            beta = int(np.flatnonzero(L.s == t)[0])
            bad = int(np.flatnonzero(I[al] & ~meets_good)[0])
            return fails((al, beta, bad),
                         f"α={L.name(al)}, β={L.name(beta)}: {L.name(bad)} extends α and meets nothing "
                         f"whose orbit reaches {L.objects[t]}", precondition=pre.reason)
    return holds(S.truncated, "", precondition=pre.reason)


def simplicity_condition(sys_, pre: Precondition | None = None) -> Report:
    """Topological freeness and minimality together, the combinatorial criterion for simplicity
    of the reduced groupoid C*-algebra and of the Steinberg algebras."""
    S = as_system(sys_)
    pre = pre or precondition(S)
    rep = Report("simplicity-condition", truncated=S.truncated)
    rep.add("top-free", check_topological_freeness(S, pre))
    rep.add("minimal", check_minimality(S, pre))
    rep.notes.append(pre.reason)
    return rep


# -- property (★) -------------------------------------------------------------------

@dataclass
class StarTable:
    g: object
    beta: dict                   # filter top → β_F
    verdict: Verdict
    missing: list = field(default_factory=list)


def check_star_property(cat, d: LengthAssignment, g, filters: FilterSets | None = None,
                        fast_path: bool = True) -> StarTable:
    """Each tight filter has a largest member among those of length ≤ g; ties go to the lowest id."""
    M = d.monoid
    g = M.coerce(g)
    fs = filters or enumerate_filters(cat)
    I = cat.ideal_mask
    below = np.array([M.leq(d(m), g) for m in range(cat.n)], dtype=bool)
    table, missing = {}, []
    for F in fs.tight:
        cand = np.flatnonzero(I[:, F.top] & below)
        dom = cand[I[np.ix_(cand, cand)].all(axis=0)]
        if len(dom):
            table[F.top] = int(dom.min())
        else:
            missing.append(F.top)
    by_table = from_bool(not missing, tuple(missing[:1]), cat.truncated)
    if fast_path and M.bounded_chains_stabilize:
        v = holds(cat.truncated, "bounded ascending chains in the length monoid stabilize",
                  fast_path=True, table_agrees=not missing)
    else:
        v = Verdict(by_table.status, by_table.witness, "largest member searched per filter",
                    {"fast_path": False})
    return StarTable(g, table, v, missing)


# -- K_g and t^(g) -------------------------------------------------------------------

@dataclass
class KernelPiece:
    g: object
    keys: np.ndarray       # rows (filter top, X, h): the germ (X, h)\(top, 1)
    t: np.ndarray          # rows (ξ, h) in Λ⁻¹⋈G
    rep: np.ndarray        # rows (Y, h): the representative with bottom β_F


def _kernel_piece(S: CategorySystem, star: StarTable, tight_tops: np.ndarray) -> tuple[KernelPiece, list]:
    L, G, A = S.cat, S.G, S.action
    d = S.d
    codes = np.asarray(d.codes)
    unit_obj = A.unit_object
    rows, trows, reps, bad = [], [], [], []
    tight = np.zeros(L.n, dtype=bool)
    tight[tight_tops] = True
    for top in tight_tops.tolist():
        bF = star.beta[top]
        mu = int(L.div[bF, top])
        for h in np.flatnonzero(unit_obj[G.s] == L.s[bF]).tolist():
            Ys = np.flatnonzero((L.s == unit_obj[G.rng(h)]) & (codes == codes[bF]))
            hm, c = int(S.act[h, mu]), int(S.coc[h, mu])
            if hm < 0 or not len(Ys):
                continue
            X = L.comp[Ys, hm]
            ok = X >= 0
            for Y, x in zip(Ys[ok].tolist(), X[ok].tolist()):
                rng_top = int(L.canon[x])
                if not tight[rng_top]:
                    continue
                xi = int(L.div[star.beta[rng_top], Y])
                if xi < 0 or not L.is_invertible(xi):
                    bad.append((top, Y, h))
                    continue
                rows.append((top, x, c))
                trows.append((xi, h))
                reps.append((Y, h))
    keys = np.array(rows, dtype=np.int64).reshape(-1, 3)
    t = np.array(trows, dtype=np.int64).reshape(-1, 2)
    return KernelPiece(star.g, keys, t, np.array(reps, dtype=np.int64).reshape(-1, 2)), bad


def _t_product(S: CategorySystem, t1: np.ndarray, t2: np.ndarray) -> np.ndarray:
    """(ξ1,h1)(ξ2,h2) = (ξ1(h1·ξ2), φ(h1,ξ2)h2) in Λ⁻¹⋈G, row by row; -1 where undefined."""
    L, G = S.cat, S.G
    hx = S.act[t1[:, 1], t2[:, 0]]
    xi = np.where(hx >= 0, L.comp[t1[:, 0], np.maximum(hx, 0)], -1)
    c = S.coc[t1[:, 1], t2[:, 0]]
    hh = np.where(c >= 0, G.comp[np.maximum(c, 0), t2[:, 1]], -1)
    return np.stack([xi, hh], axis=1)


def _key_product(S: CategorySystem, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """x∘y for germ keys, where the range filter of y is the filter of x."""
    L, G = S.cat, S.G
    xi = L.div[x[:, 0], y[:, 1]]
    a = S.act[x[:, 2], xi]
    X = np.where(a >= 0, L.comp[x[:, 1], np.maximum(a, 0)], -1)
    c = S.coc[x[:, 2], xi]
    h = np.where(c >= 0, G.comp[np.maximum(c, 0), y[:, 2]], -1)
    return np.stack([y[:, 0], X, h], axis=1)


def _encode(S: CategorySystem, keys: np.ndarray) -> np.ndarray:
    n, m = S.cat.n, S.G.n
    return (keys[:, 0].astype(np.int64) * n + keys[:, 1]) * m + keys[:, 2]


@dataclass
class KernelResult:
    report: Report
    pieces: dict


def kernel_and_tg(sys_, gs, filters: FilterSets | None = None, check_pairs: bool = True) -> KernelResult:
    """K_g for each g in ``gs`` with the map t^(g) into Λ⁻¹⋈G, and the checks:
    closure K_{g1}K_{g2} ⊆ K_{g1∨g2}, t^(g) a homomorphism on K_g, t^(g) well defined,
    and t^(g) strongly surjective onto its image."""
    S = as_system(sys_)
    L = S.cat
    if S.d is None:
        raise PreconditionUnverified("K_g needs a length function")
    M = S.d.monoid
    pf = is_pseudo_free(S)
    if not pf.holds:
        raise PreconditionUnverified("K_g and t^(g) need a pseudo-free system")
    gs = [M.coerce(g) for g in gs]
    if not M.is_join_semilattice(gs + list(M.elements_up_to(3))):
        raise PreconditionUnverified(f"{M.spec()} is not a join-semilattice")
    fs = filters or enumerate_filters(L)
    rep = Report("kernel-tg", truncated=S.truncated)
    tight_tops = np.array(sorted(F.top for F in fs.tight), dtype=np.int64)
    pieces, stars = {}, {}
    for g in gs:
        st = check_star_property(L, S.d, g, fs)
        stars[g] = st
        if st.missing:
            raise PreconditionUnverified(f"(★) fails at g={M.fmt(g)} for the filter of {L.name(st.missing[0])}")
        piece, bad = _kernel_piece(S, st, tight_tops)
        pieces[g] = piece
        rep.add(f"normal-form[{M.fmt(g)}]", from_bool(not bad, bad[0] if bad else (), S.truncated,
                                                      germs=len(piece.keys)))
        # well defined: distinct representatives at β_F give distinct germs
        codes = _encode(S, piece.keys)
        uniq, first, counts = np.unique(codes, return_index=True, return_counts=True)
        dup = np.flatnonzero(counts > 1)
        w = tuple(int(v) for v in piece.rep[first[dup[0]]]) if len(dup) else ()
        rep.add(f"well-defined[{M.fmt(g)}]", from_bool(not len(dup), w, S.truncated,
                                                       pairs=int((counts - 1).sum())))
        rep.add(f"lower-representatives[{M.fmt(g)}]", _lower_representatives(S, st, piece, codes))

    def lookup(g, keys):
        codes = _encode(S, pieces[g].keys)
        order = np.argsort(codes)
        q = _encode(S, keys)
        pos = np.searchsorted(codes[order], q)
        pos = np.minimum(pos, len(codes) - 1)
        hit = codes[order][pos] == q
        return np.where(hit, order[pos], -1)

    # closure and homomorphism
    for g1 in gs:
        for g2 in gs:
            j = M.join(g1, g2)
            if j not in pieces:
                continue
            x_all, y_all = pieces[g1], pieces[g2]
            rng_y = L.canon[y_all.keys[:, 1]]
            bad_c = bad_h = ()
            total = 0
            for top in np.unique(rng_y).tolist():
                yi = np.flatnonzero(rng_y == top)
                xi = np.flatnonzero(x_all.keys[:, 0] == top)
                if not len(xi):
                    continue
                X = np.repeat(xi, len(yi))
                Y = np.tile(yi, len(xi))
                total += len(X)
                prod = _key_product(S, x_all.keys[X], y_all.keys[Y])
                at = lookup(j, prod) if (prod[:, 1] >= 0).all() else np.full(len(X), -1)
                miss = np.flatnonzero(at < 0)
                if len(miss) and not bad_c:
                    k = miss[0]
                    bad_c = (int(X[k]), int(Y[k]))
                ok = at >= 0
                if g1 != g2:
                    continue
                tp = _t_product(S, x_all.t[X[ok]], y_all.t[Y[ok]])
                diff = np.flatnonzero((tp != pieces[j].t[at[ok]]).any(axis=1))
                if len(diff) and not bad_h:
                    k = np.flatnonzero(ok)[diff[0]]
                    bad_h = (int(X[k]), int(Y[k]))
                if not check_pairs:
                    break
            rep.add(f"closure[{M.fmt(g1)},{M.fmt(g2)}]", from_bool(not bad_c, bad_c, S.truncated, pairs=total))
            if g1 == g2:
                rep.add(f"homomorphism[{M.fmt(g1)}]", from_bool(not bad_h, bad_h, S.truncated))

    for g in gs:
        rep.add(f"strongly-surjective[{M.fmt(g)}]", _strong_surjectivity(S, pieces[g]))
    rep.data["sizes"] = {M.fmt(g): int(len(p.keys)) for g, p in pieces.items()}
    rep.data["filters"] = int(len(tight_tops))
    rep.notes.append("amenability itself is not decided; these are its prerequisites")
    return KernelResult(rep, pieces)


def _lower_representatives(S: CategorySystem, st: StarTable, piece: KernelPiece, codes) -> Verdict:
    """Germs written with a shorter bottom β ≤ β_F restrict to a K_g germ with the same t^(g)."""
    L, G, A = S.cat, S.G, S.action
    d = S.d
    lookup = {int(c): i for i, c in enumerate(codes)}
    codes = np.asarray(d.codes)
    I = L.ideal_mask
    found = 0
    for top, bF in st.beta.items():
        mu_top = int(L.div[bF, top])
        for b in np.flatnonzero(I[:, bF]).tolist():
            if b == bF:
                continue
            sig = int(L.div[b, bF])
            for h in np.flatnonzero(A.unit_object[G.s] == L.s[b]).tolist():
                hs, c = int(S.act[h, sig]), int(S.coc[h, sig])
                if hs < 0:
                    continue
                Ys = np.flatnonzero((L.s == A.unit_object[G.rng(h)]) & (codes == codes[b]))
                for Y in Ys.tolist():
                    Y2 = int(L.comp[Y, hs])
                    if Y2 < 0:
                        continue
                    # restricted to β_F the representative is (Y2, c); its key at the top
                    cm = int(S.act[c, mu_top])
                    X = int(L.comp[Y2, cm]) if cm >= 0 else -1
                    if X < 0:
                        continue
                    code = (top * L.n + X) * G.n + int(S.coc[c, mu_top])
                    i = lookup.get(code)
                    if i is None:
                        continue
                    found += 1
                    if tuple(piece.rep[i]) != (Y2, c):
                        return fails((top, b, Y, h), "a shorter representative gives another normal form")
    return holds(S.truncated, pairs=found)


def _strong_surjectivity(S: CategorySystem, piece: KernelPiece) -> Verdict:
    """t(r⁻¹(F)) = r⁻¹(t(unit at F)) inside the image H_g."""
    L = S.cat
    if not len(piece.keys):
        return holds(S.truncated)
    rng_top = L.canon[piece.keys[:, 1]]
    image = {tuple(r) for r in piece.t.tolist()}
    by_range_obj: dict = {}
    for xi, h in image:
        by_range_obj.setdefault(int(L.r[xi]), set()).add((xi, h))
    for top in np.unique(rng_top).tolist():
        got = {tuple(r) for r in piece.t[rng_top == top].tolist()}
        unit = piece.t[(piece.keys[:, 0] == top) & (piece.keys[:, 1] == top)]
        if not len(unit):
            return fails((top,), f"no unit germ over the filter of {L.name(top)}")
        want = by_range_obj.get(int(L.r[unit[0, 0]]), set())
        if got != want:
            return fails((top,), f"image of the germs ending at the filter of {L.name(top)} "
                                 f"is not the set of arrows ending at t(unit)")
    return holds(S.truncated)


# -- DOT --------------------------------------------------------------------------------

def germ_dot(gg: GermGroupoid, limit: int = 500) -> str:
    """Composition graph: tight filters as nodes, germs as arrows from filter to range filter."""
    S = gg.sys
    L = S.cat
    lines = ["digraph germs {", "  rankdir=LR;"]
    for F in sorted(gg.filters.tight, key=lambda F: F.top):
        lines.append(f'  f{F.top} [label="[{L.name(F.top)}]"];')
    for x in gg.germs[:limit]:
        R = germ_range(S, x)
        lines.append(f'  f{x.filter.top} -> f{R.top} [label="{x.elem.describe(S)}"];')
    if gg.n > limit:
        lines.append(f'  // {gg.n - limit} more germs omitted')
    lines.append("}")
    return "\n".join(lines) + "\n"
